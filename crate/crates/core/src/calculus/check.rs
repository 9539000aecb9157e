use std::collections::BTreeSet;

use super::premises::premises_a;
use super::{ProofError, ProofNode, Rule, System};
use crate::classical::is_stable;
use crate::syntax::{locate, replace_at, Formula, OccKind, Polarity};

/// Checks every node of `proof` against the rules of `system`.
pub fn check_proof(proof: &ProofNode, system: System) -> Result<(), ProofError> {
    let mut first: Option<ProofError> = None;
    proof.visit(&mut |path, node| {
        if first.is_none() {
            if let Err(violation) = check_node(node, system) {
                first = Some(ProofError {
                    path: path.to_vec(),
                    conclusion: node.conclusion.clone(),
                    violation,
                });
            }
        }
    });
    first.map_or(Ok(()), Err)
}

fn single_child(node: &ProofNode) -> Result<&Formula, String> {
    match node.children.as_slice() {
        [c] => Ok(&c.conclusion),
        other => Err(format!("expected exactly one premise, found {}", other.len())),
    }
}

fn check_node(node: &ProofNode, system: System) -> Result<(), String> {
    let f = &node.conclusion;
    match system {
        System::Cl1 if !f.is_elementary_base() => return Err("general or hybrid atom in a CL1 proof".into()),
        System::Cl2 if !f.is_cl2_formula() => return Err("hybrid atom in a CL2 proof".into()),
        System::Cl2Circ if !f.is_balanced() => return Err("conclusion not balanced".into()),
        _ => {}
    }
    match (&node.rule, system) {
        (Rule::C { .. }, System::Cl1 | System::Cl2Circ) => return Err(format!("rule (c) is not a rule of {system}")),
        (Rule::CCirc { .. }, System::Cl1 | System::Cl2) => return Err(format!("rule (c°) is not a rule of {system}")),
        _ => {}
    }
    match &node.rule {
        Rule::A => {
            if !is_stable(f) {
                return Err("conclusion not stable".into());
            }
            let expected: BTreeSet<Formula> = premises_a(f).into_iter().collect();
            let given: BTreeSet<Formula> = node.children.iter().map(|c| c.conclusion.clone()).collect();
            if expected != given {
                return Err("premises do not match rule (a)".into());
            }
        }
        Rule::B { spec, index } => {
            let child = single_child(node)?;
            let (q, pol) = locate(f, spec).ok_or("rule (b) spec does not address a quasiatom")?;
            let ok = matches!(
                (OccKind::of(q), pol),
                (Some(OccKind::ChandNode), Polarity::Negative) | (Some(OccKind::ChorNode), Polarity::Positive)
            );
            if !ok {
                return Err("rule (b) needs a negative surface ⊓ or positive surface ⊔".into());
            }
            let components = q.children();
            let chosen = index.checked_sub(1).and_then(|i| components.get(i)).ok_or("rule (b) index out of range")?;
            if replace_at(f, spec, chosen).ok().as_ref() != Some(child) {
                return Err("premise is not the rule (b) replacement".into());
            }
        }
        Rule::C { pos_spec, neg_spec, general, fresh } => {
            let child = single_child(node)?;
            if f.elementary_names().contains(fresh) {
                return Err("fresh atom occurs in conclusion".into());
            }
            let target = Formula::General(general.clone());
            for (spec, want) in [(pos_spec, Polarity::Positive), (neg_spec, Polarity::Negative)] {
                match locate(f, spec) {
                    Some((q, pol)) if *q == target && pol == want => {}
                    _ => {
                        let sign = if want.is_positive() { "positive" } else { "negative" };
                        return Err(format!("no {sign} surface occurrence of {general} at `{spec}`"));
                    }
                }
            }
            let atom = Formula::Elem(fresh.clone());
            let replaced = replace_at(f, pos_spec, &atom).and_then(|g| replace_at(&g, neg_spec, &atom));
            if replaced.ok().as_ref() != Some(child) {
                return Err("premise is not the rule (c) replacement".into());
            }
        }
        Rule::CCirc { general, elem } => {
            let child = single_child(node)?;
            let hybrid = Formula::Hybrid { general: general.clone(), elem: elem.clone() };
            let mut count = 0;
            child.visit(&mut |n| count += usize::from(*n == hybrid));
            if count != 2 {
                return Err(format!("premise must contain {general}_{elem} exactly twice"));
            }
            if !child.is_balanced() {
                return Err("premise not balanced".into());
            }
            let collapsed = child.map_bottom_up(&mut |n| if n == hybrid { Formula::General(general.clone()) } else { n });
            if collapsed != *f {
                return Err("premise is not the rule (c°) replacement".into());
            }
        }
    }
    Ok(())
}
