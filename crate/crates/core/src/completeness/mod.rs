//! Molecules, ceilings and floors: the machinery behind the completeness
//! direction, plus a constructive translation from CL1 proofs of good
//! formulas to CL2 proofs of their floors.

mod refute;
mod translate;


use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use refute::{refute, refute_with, Refutation, RefutationCertificate};
pub use translate::{claim1_translate, claim1_translate_traced, Subcase};

use crate::calculus::{CalcError, ProofError};
use crate::syntax::{Formula, Name, Polarity, SpecPath};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompletenessError {
    #[error("m = {k} is too small: {needed} needed")]
    MTooSmall { k: usize, needed: usize },
    #[error("`{0}` is not a CL2 formula")]
    NotCl2(Formula),
    #[error("`{0}` already uses molecule atom names")]
    Collision(Formula),
    #[error("`{formula}` is not good: {failure}")]
    NotGood { formula: Formula, failure: GoodFailure },
    #[error("not a CL1 proof: {0}")]
    BadProof(ProofError),
    #[error("the CL1 proof has no premise `{0}`")]
    MissingPremise(Formula),
    #[error(transparent)]
    Calc(#[from] CalcError),
}

/// How `m` is chosen for a ceiling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode", content = "k")]
pub enum MMode {
    /// Total number of general-atom occurrences.
    Total,
    /// Largest number of occurrences of any single general atom.
    PerAtom,
    Fixed(usize),
}

impl fmt::Display for MMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MMode::Total => f.write_str("total"),
            MMode::PerAtom => f.write_str("per-atom"),
            MMode::Fixed(k) => write!(f, "{k}"),
        }
    }
}

impl std::str::FromStr for MMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "total" => Ok(MMode::Total),
            "per-atom" | "peratom" => Ok(MMode::PerAtom),
            _ => s.parse().map(MMode::Fixed).map_err(|_| format!("bad m `{s}` (expected total, per-atom or a number)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Size {
    Small,
    Medium,
    Large,
}

/// Which molecule a formula is, if any.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Molecule {
    Small { general: Name, a: usize, b: usize },
    Medium { general: Name, a: usize },
    Large { general: Name },
}

impl Molecule {
    pub fn size(&self) -> Size {
        match self {
            Molecule::Small { .. } => Size::Small,
            Molecule::Medium { .. } => Size::Medium,
            Molecule::Large { .. } => Size::Large,
        }
    }

    pub fn general(&self) -> &Name {
        match self {
            Molecule::Small { general, .. } | Molecule::Medium { general, .. } | Molecule::Large { general } => general,
        }
    }
}

/// Molecule atoms `_P_a_b` for a fixed set of general atoms and a fixed `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoleculeScheme {
    pub m: usize,
    pub generals: BTreeSet<Name>,
    /// Count molecules per general atom rather than in total when checking
    /// the occurrence bound.
    pub per_atom_bound: bool,
}

impl MoleculeScheme {
    pub fn new(m: usize, generals: impl IntoIterator<Item = Name>) -> MoleculeScheme {
        MoleculeScheme { m, generals: generals.into_iter().collect(), per_atom_bound: false }
    }

    pub fn small_name(general: &str, a: usize, b: usize) -> Name {
        format!("_{general}_{a}_{b}").into()
    }

    pub fn small(&self, general: &str, a: usize, b: usize) -> Formula {
        Formula::Elem(Self::small_name(general, a, b))
    }

    pub fn medium(&self, general: &str, a: usize) -> Formula {
        Formula::chor((1..=self.m).map(|b| self.small(general, a, b)).collect())
    }

    pub fn large(&self, general: &str) -> Formula {
        Formula::chand((1..=self.m).map(|a| self.medium(general, a)).collect())
    }

    fn parse_small(&self, name: &str) -> Option<(Name, usize, usize)> {
        let mut parts = name.strip_prefix('_')?.split('_');
        let (p, a, b) = (parts.next()?, parts.next()?, parts.next()?);
        if parts.next().is_some() {
            return None;
        }
        let general = self.generals.get(p)?.clone();
        let (a, b) = (crate::syntax::parse_choice(a)?, crate::syntax::parse_choice(b)?);
        (a <= self.m && b <= self.m).then_some((general, a, b))
    }

    /// Recognizes `f` as a molecule of this scheme.
    pub fn classify(&self, f: &Formula) -> Option<Molecule> {
        match f {
            Formula::Elem(name) => {
                self.parse_small(name).map(|(general, a, b)| Molecule::Small { general, a, b })
            }
            Formula::Chor(cs) if cs.len() == self.m => {
                let (general, a, _) = match &cs[0] {
                    Formula::Elem(n) => self.parse_small(n)?,
                    _ => return None,
                };
                let all = cs.iter().enumerate().all(|(i, c)| *c == self.small(&general, a, i + 1));
                all.then_some(Molecule::Medium { general, a })
            }
            Formula::Chand(cs) if cs.len() == self.m => {
                let Some(Molecule::Medium { general, a: 1 }) = self.classify(&cs[0]) else { return None };
                let all = cs.iter().enumerate().all(|(i, c)| *c == self.medium(&general, i + 1));
                all.then_some(Molecule::Large { general })
            }
            _ => None,
        }
    }

    pub fn formula(&self, molecule: &Molecule) -> Formula {
        match molecule {
            Molecule::Small { general, a, b } => self.small(general, *a, *b),
            Molecule::Medium { general, a } => self.medium(general, *a),
            Molecule::Large { general } => self.large(general),
        }
    }

    /// Does `f` mention any name this scheme would generate?
    pub fn collides_with(&self, f: &Formula) -> bool {
        f.elementary_names().iter().any(|n| self.parse_small(n).is_some())
    }
}

/// Replaces every general-atom occurrence by its large molecule.
pub fn ceiling(f: &Formula, mode: MMode) -> Result<(Formula, MoleculeScheme), CompletenessError> {
    if !f.is_cl2_formula() {
        return Err(CompletenessError::NotCl2(f.clone()));
    }
    let mut per_atom: BTreeMap<Name, usize> = BTreeMap::new();
    f.visit_atoms(&mut |a, _, _| {
        if let Formula::General(p) = a {
            *per_atom.entry(p.clone()).or_default() += 1;
        }
    });
    let widest = per_atom.values().copied().max().unwrap_or(0);
    let (m, per_atom_bound) = match mode {
        MMode::Total => (per_atom.values().sum::<usize>().max(2), false),
        MMode::PerAtom => (widest.max(2), true),
        MMode::Fixed(k) if k < widest.max(2) => {
            return Err(CompletenessError::MTooSmall { k, needed: widest.max(2) })
        }
        MMode::Fixed(k) => (k, true),
    };
    let scheme = MoleculeScheme { m, generals: per_atom.into_keys().collect(), per_atom_bound };
    if scheme.collides_with(f) {
        return Err(CompletenessError::Collision(f.clone()));
    }
    let out = f.map_bottom_up(&mut |g| match g {
        Formula::General(p) => scheme.large(&p),
        other => other,
    });
    Ok((out, scheme))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoleculeOccurrence {
    pub path: SpecPath,
    pub size: Size,
    #[serde(skip)]
    pub molecule: Molecule,
    pub polarity: Polarity,
    pub surface: bool,
    /// Every occurrence reported here is independent; the flag is kept for
    /// callers that serialize the table.
    pub independent: bool,
    /// A small molecule with exactly one independent occurrence.
    pub isolated: bool,
}

/// Independent molecule occurrences, outermost first, left to right.
///
/// Paths number children of every connective, choice nodes included;
/// negation is transparent.
pub fn independent_occurrences(e: &Formula, scheme: &MoleculeScheme) -> Vec<MoleculeOccurrence> {
    fn go(
        f: &Formula,
        scheme: &MoleculeScheme,
        path: &mut Vec<u32>,
        pol: Polarity,
        surface: bool,
        out: &mut Vec<MoleculeOccurrence>,
    ) {
        if let Some(molecule) = scheme.classify(f) {
            out.push(MoleculeOccurrence {
                path: SpecPath::from_indices(path.iter().copied()),
                size: molecule.size(),
                molecule,
                polarity: pol,
                surface,
                independent: true,
                isolated: false,
            });
            return;
        }
        match f {
            Formula::Neg(a) => go(a, scheme, path, pol.flip(), surface, out),
            Formula::Implies(a, b) => {
                for (i, c, p) in [(1, a, pol.flip()), (2, b, pol)] {
                    path.push(i);
                    go(c, scheme, path, p, surface, out);
                    path.pop();
                }
            }
            _ => {
                let under_choice = surface && !f.is_choice();
                for (i, c) in f.children().into_iter().enumerate() {
                    path.push(i as u32 + 1);
                    go(c, scheme, path, pol, under_choice, out);
                    path.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(e, scheme, &mut Vec::new(), Polarity::Positive, true, &mut out);
    let mut counts: BTreeMap<Molecule, usize> = BTreeMap::new();
    for o in &out {
        *counts.entry(o.molecule.clone()).or_default() += 1;
    }
    for o in &mut out {
        o.isolated = o.size == Size::Small && counts[&o.molecule] == 1;
    }
    out
}

/// Which goodness condition failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition")]
pub enum GoodFailure {
    /// More than `m` independent molecule occurrences.
    TooManyMolecules { count: usize, m: usize },
    /// A small or medium molecule occurs independently below a choice connective.
    NonSurface { path: SpecPath },
    /// A small molecule has two independent occurrences of the same polarity.
    RepeatedSmall { path: SpecPath },
    /// A medium molecule occurs positively twice, or together with a positive
    /// small molecule of the same row.
    PositiveMedium { path: SpecPath },
}

impl GoodFailure {
    /// Number of the violated condition, 1 to 4.
    pub fn condition(&self) -> u8 {
        match self {
            GoodFailure::TooManyMolecules { .. } => 1,
            GoodFailure::NonSurface { .. } => 2,
            GoodFailure::RepeatedSmall { .. } => 3,
            GoodFailure::PositiveMedium { .. } => 4,
        }
    }
}

impl fmt::Display for GoodFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GoodFailure::TooManyMolecules { count, m } => {
                write!(f, "Cond1: {count} independent molecule occurrences, more than m = {m}")
            }
            GoodFailure::NonSurface { path } => write!(f, "Cond2: non-surface small or medium molecule at `{path}`"),
            GoodFailure::RepeatedSmall { path } => write!(f, "Cond3: repeated small molecule at `{path}`"),
            GoodFailure::PositiveMedium { path } => write!(f, "Cond4: conflicting positive molecule at `{path}`"),
        }
    }
}

/// Checks the four goodness conditions in order and reports the first failure.
pub fn is_good(e: &Formula, scheme: &MoleculeScheme) -> Result<(), GoodFailure> {
    let occs = independent_occurrences(e, scheme);
    let m = scheme.m;
    if scheme.per_atom_bound {
        let mut per: BTreeMap<&Name, usize> = BTreeMap::new();
        for o in &occs {
            *per.entry(o.molecule.general()).or_default() += 1;
        }
        if let Some(&count) = per.values().find(|&&c| c > m) {
            return Err(GoodFailure::TooManyMolecules { count, m });
        }
    } else if occs.len() > m {
        return Err(GoodFailure::TooManyMolecules { count: occs.len(), m });
    }
    if let Some(o) = occs.iter().find(|o| !o.surface && o.size != Size::Large) {
        return Err(GoodFailure::NonSurface { path: o.path.clone() });
    }
    let mut seen = BTreeSet::new();
    for o in occs.iter().filter(|o| o.size == Size::Small) {
        if !seen.insert((&o.molecule, o.polarity.is_positive())) {
            return Err(GoodFailure::RepeatedSmall { path: o.path.clone() });
        }
    }
    let mut positive_media = BTreeSet::new();
    for o in occs.iter().filter(|o| o.size == Size::Medium && o.polarity.is_positive()) {
        if !positive_media.insert(o.molecule.clone()) {
            return Err(GoodFailure::PositiveMedium { path: o.path.clone() });
        }
    }
    for o in occs.iter().filter(|o| o.polarity.is_positive()) {
        if let Molecule::Small { general, a, .. } = &o.molecule {
            if positive_media.contains(&Molecule::Medium { general: general.clone(), a: *a }) {
                return Err(GoodFailure::PositiveMedium { path: o.path.clone() });
            }
        }
    }
    Ok(())
}

/// Replaces every independent large, medium and isolated small molecule by
/// its general atom.
pub fn floor(e: &Formula, scheme: &MoleculeScheme) -> Formula {
    let occs = independent_occurrences(e, scheme);
    let isolated: BTreeSet<&Molecule> = occs.iter().filter(|o| o.isolated).map(|o| &o.molecule).collect();
    fn go(f: &Formula, scheme: &MoleculeScheme, isolated: &BTreeSet<&Molecule>) -> Formula {
        match scheme.classify(f) {
            Some(Molecule::Small { general, a, b }) => {
                if isolated.contains(&Molecule::Small { general: general.clone(), a, b }) {
                    Formula::General(general)
                } else {
                    f.clone()
                }
            }
            Some(m) => Formula::General(m.general().clone()),
            None if f.is_atom() || f.children().is_empty() => f.clone(),
            None => f.with_children(f.children().into_iter().map(|c| go(c, scheme, isolated)).collect()),
        }
    }
    go(e, scheme, &isolated)
}
