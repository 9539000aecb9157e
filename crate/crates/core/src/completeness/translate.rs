use serde::Serialize;

use super::{floor, independent_occurrences, is_good, CompletenessError, Molecule, MoleculeScheme, Size};
use crate::calculus::{check_proof, premises_a_detailed, ProofNode, Rule, System};
use crate::syntax::{locate, replace_at, Formula};

/// Which translation step handled a CL1 proof node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Subcase {
    /// Rule (a) with a positive surface large molecule: follow the premise
    /// that shrinks it to an unused medium molecule.
    ShrinkLarge,
    /// Rule (a) with a negative surface medium molecule: follow the premise
    /// that shrinks it to an unused small molecule.
    ShrinkMedium,
    /// Rule (a) otherwise: rebuild rule (a) on the floor.
    RuleA,
    /// Rule (b) on a connective that is not a molecule.
    RuleB,
    /// Rule (b) picking a medium molecule out of a large one.
    CollapseLarge,
    /// Rule (b) picking a small molecule with no other independent occurrence.
    CollapseMedium,
    /// Rule (b) picking a small molecule that also occurs negatively: emits rule (c).
    RuleC,
}

/// Turns a CL1 proof of a good formula `E` into a CL2 proof of `⌊E⌋`.
pub fn claim1_translate(proof: &ProofNode, scheme: &MoleculeScheme) -> Result<ProofNode, CompletenessError> {
    claim1_translate_traced(proof, scheme).map(|(p, _)| p)
}

/// As [`claim1_translate`], also listing the step taken at each visited node.
pub fn claim1_translate_traced(
    proof: &ProofNode,
    scheme: &MoleculeScheme,
) -> Result<(ProofNode, Vec<Subcase>), CompletenessError> {
    check_proof(proof, System::Cl1).map_err(CompletenessError::BadProof)?;
    is_good(&proof.conclusion, scheme)
        .map_err(|failure| CompletenessError::NotGood { formula: proof.conclusion.clone(), failure })?;
    let mut trace = Vec::new();
    let out = translate(proof, scheme, &mut trace)?;
    Ok((out, trace))
}

fn premise<'a>(node: &'a ProofNode, h: &Formula) -> Result<&'a ProofNode, CompletenessError> {
    node.children.iter().find(|c| c.conclusion == *h).ok_or_else(|| CompletenessError::MissingPremise(h.clone()))
}

fn translate(node: &ProofNode, scheme: &MoleculeScheme, trace: &mut Vec<Subcase>) -> Result<ProofNode, CompletenessError> {
    let e = &node.conclusion;
    let occs = independent_occurrences(e, scheme);
    let unused = |pred: &dyn Fn(&Molecule) -> bool| !occs.iter().any(|o| pred(&o.molecule));
    match &node.rule {
        Rule::A => {
            let large = occs.iter().find(|o| o.surface && o.size == Size::Large && o.polarity.is_positive());
            if let Some(o) = large {
                let p = o.molecule.general().clone();
                let a = (1..=scheme.m)
                    .find(|&a| {
                        unused(&|m| match m {
                            Molecule::Medium { general, a: x } | Molecule::Small { general, a: x, .. } => {
                                *general == p && *x == a
                            }
                            Molecule::Large { .. } => false,
                        })
                    })
                    .expect("goodness leaves a free row");
                let h = replace_at(e, &o.path, &scheme.medium(&p, a)).expect("surface path");
                trace.push(Subcase::ShrinkLarge);
                return translate(premise(node, &h)?, scheme, trace);
            }
            let medium = occs.iter().find(|o| o.surface && o.size == Size::Medium && !o.polarity.is_positive());
            if let Some(o) = medium {
                let Molecule::Medium { general: p, a } = &o.molecule else { unreachable!() };
                let b = (1..=scheme.m)
                    .find(|&b| unused(&|m| *m == Molecule::Small { general: p.clone(), a: *a, b }))
                    .expect("goodness leaves a free column");
                let h = replace_at(e, &o.path, &scheme.small(p, *a, b)).expect("surface path");
                trace.push(Subcase::ShrinkMedium);
                return translate(premise(node, &h)?, scheme, trace);
            }
            trace.push(Subcase::RuleA);
            let fl = floor(e, scheme);
            let mut children = Vec::new();
            for (_, spec, i) in premises_a_detailed(&fl) {
                let (g, _) = locate(e, &spec).expect("floor keeps choice nodes in place");
                let h = replace_at(e, &spec, g.children()[i - 1]).expect("surface path");
                children.push(translate(premise(node, &h)?, scheme, trace)?);
            }
            Ok(ProofNode { conclusion: fl, rule: Rule::A, children })
        }
        Rule::B { spec, index } => {
            let child = &node.children[0];
            let (g, _) = locate(e, spec).expect("checked proof");
            match scheme.classify(g) {
                None => {
                    trace.push(Subcase::RuleB);
                    let sub = translate(child, scheme, trace)?;
                    Ok(ProofNode {
                        conclusion: floor(e, scheme),
                        rule: Rule::B { spec: spec.clone(), index: *index },
                        children: vec![sub],
                    })
                }
                Some(Molecule::Large { .. }) => {
                    trace.push(Subcase::CollapseLarge);
                    translate(child, scheme, trace)
                }
                Some(Molecule::Medium { general, a }) => {
                    let small = Molecule::Small { general: general.clone(), a, b: *index };
                    match occs.iter().find(|o| o.molecule == small) {
                        None => {
                            trace.push(Subcase::CollapseMedium);
                            translate(child, scheme, trace)
                        }
                        Some(neg) => {
                            trace.push(Subcase::RuleC);
                            let sub = translate(child, scheme, trace)?;
                            Ok(ProofNode {
                                conclusion: floor(e, scheme),
                                rule: Rule::C {
                                    pos_spec: spec.clone(),
                                    neg_spec: neg.path.clone(),
                                    general,
                                    fresh: MoleculeScheme::small_name(small.general(), a, *index),
                                },
                                children: vec![sub],
                            })
                        }
                    }
                }
                Some(Molecule::Small { .. }) => unreachable!("small molecules are not choice nodes"),
            }
        }
        Rule::C { .. } | Rule::CCirc { .. } => unreachable!("rejected by the CL1 check"),
    }
}
