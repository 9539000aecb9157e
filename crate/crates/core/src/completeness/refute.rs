use serde::Serialize;

use super::{ceiling, floor, is_good, CompletenessError, MMode, MoleculeScheme};
use crate::calculus::{decide, Budget, Decider, System};
use crate::syntax::Formula;

/// Evidence that a CL2-unprovable formula has a CL1-unprovable ceiling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefutationCertificate {
    #[serde(serialize_with = "as_string")]
    pub formula: Formula,
    pub mode: MMode,
    #[serde(serialize_with = "as_string")]
    pub ceiling: Formula,
    pub scheme: MoleculeScheme,
    pub ceiling_good: bool,
    pub cl1_unprovable: bool,
    pub floor_roundtrip: bool,
    /// Distinct subgoals the CL1 search visited.
    pub explored: usize,
}

fn as_string<S: serde::Serializer>(f: &Formula, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&f.to_string())
}

impl RefutationCertificate {
    pub fn holds(&self) -> bool {
        self.ceiling_good && self.cl1_unprovable && self.floor_roundtrip
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    Certificate(Box<RefutationCertificate>),
    /// The formula is CL2-provable.
    NotRefutable,
}

pub fn refute(f: &Formula, mode: MMode) -> Result<Refutation, CompletenessError> {
    refute_with(f, mode, Budget::default())
}

/// As [`refute`], with a budget for the CL1 search on the ceiling.
pub fn refute_with(f: &Formula, mode: MMode, budget: Budget) -> Result<Refutation, CompletenessError> {
    if decide(f, System::Cl2)? {
        return Ok(Refutation::NotRefutable);
    }
    let (up, scheme) = ceiling(f, mode)?;
    let mut decider = Decider::with_budget(System::Cl1, budget);
    let provable = decider.decide(&up)?;
    Ok(Refutation::Certificate(Box::new(RefutationCertificate {
        formula: f.clone(),
        mode,
        ceiling_good: is_good(&up, &scheme).is_ok(),
        floor_roundtrip: floor(&up, &scheme) == *f,
        ceiling: up,
        scheme,
        cl1_unprovable: !provable,
        explored: decider.explored(),
    })))
}
