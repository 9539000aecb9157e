//! The calculi CL1, CL2 and CL2°: premises, decision, proofs, checking.

mod check;
mod premises;
mod proof;
mod search;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use check::check_proof;
pub use premises::{premises_a, premises_a_detailed, premises_b, premises_c, PremiseB, PremiseC};
pub use proof::{ProofNode, Rule};
pub use search::{decide, prove, Budget, Decider, Witness};

use crate::syntax::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum System {
    Cl1,
    Cl2,
    Cl2Circ,
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            System::Cl1 => "CL1",
            System::Cl2 => "CL2",
            System::Cl2Circ => "CL2°",
        })
    }
}

impl std::str::FromStr for System {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cl1" => Ok(System::Cl1),
            "cl2" => Ok(System::Cl2),
            "cl2circ" | "cl2°" | "cl2o" => Ok(System::Cl2Circ),
            _ => Err(format!("unknown system `{s}` (expected cl1, cl2 or cl2circ)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalcError {
    #[error("`{0}` contains general atoms; CL1 accepts elementary-base formulas only")]
    NotElementaryBase(Formula),
    #[error("`{0}` contains hybrid atoms")]
    HybridInput(Formula),
    #[error("proof search is not available for {0}")]
    UnsupportedSystem(System),
    #[error("search budget exceeded after {explored} subgoals")]
    BudgetExceeded { explored: usize },
    #[error("not a valid CL2 proof: {0}")]
    InvalidProof(ProofError),
}

/// The first offending node of a rejected proof.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("node {path:?} (`{conclusion}`): {violation}")]
pub struct ProofError {
    /// Child indices from the root.
    pub path: Vec<usize>,
    pub conclusion: Formula,
    pub violation: String,
}

/// Turns a CL2 proof into a CL2° proof of the same formula: every rule (c)
/// node becomes rule (c°), and its fresh atom `q` is rewritten to `P_q`
/// throughout the subtree above it.
pub fn hybridize(proof: &ProofNode) -> Result<ProofNode, CalcError> {
    check_proof(proof, System::Cl2).map_err(CalcError::InvalidProof)?;
    Ok(hybridize_unchecked(proof))
}

fn hybridize_unchecked(node: &ProofNode) -> ProofNode {
    let children: Vec<ProofNode> = node.children.iter().map(hybridize_unchecked).collect();
    match &node.rule {
        Rule::C { general, fresh, .. } => {
            let hybrid = Formula::Hybrid { general: general.clone(), elem: fresh.clone() };
            let children = children.iter().map(|c| rename_elem(c, fresh, &hybrid)).collect();
            ProofNode {
                conclusion: node.conclusion.clone(),
                rule: Rule::CCirc { general: general.clone(), elem: fresh.clone() },
                children,
            }
        }
        rule => ProofNode { conclusion: node.conclusion.clone(), rule: rule.clone(), children },
    }
}

fn rename_elem(node: &ProofNode, from: &str, to: &Formula) -> ProofNode {
    ProofNode {
        conclusion: node.conclusion.substitute_elem(from, to),
        rule: node.rule.clone(),
        children: node.children.iter().map(|c| rename_elem(c, from, to)).collect(),
    }
}

#[cfg(test)]
mod tests;
