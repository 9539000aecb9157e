use crate::syntax::{replace_at, surface_quasiatoms, Formula, Name, OccKind, Occurrence, Polarity, SpecPath};

/// A Rule (b) premise: the choice occurrence at `spec` resolved to child `index` (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PremiseB {
    pub formula: Formula,
    pub spec: SpecPath,
    pub index: usize,
}

/// A Rule (c) premise: one positive and one negative surface occurrence of
/// `general` replaced by the elementary atom `fresh`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PremiseC {
    pub formula: Formula,
    pub pos_spec: SpecPath,
    pub neg_spec: SpecPath,
    pub general: Name,
    pub fresh: Name,
}

fn choices(f: &Formula) -> &[Formula] {
    match f {
        Formula::Chand(cs) | Formula::Chor(cs) => cs,
        _ => &[],
    }
}

/// Is this surface occurrence a choice made by the environment (positive `⊓`,
/// negative `⊔`), by the machine (negative `⊓`, positive `⊔`), or neither?
fn chooser(occ: &Occurrence) -> Option<bool> {
    match (occ.kind, occ.polarity) {
        (OccKind::ChandNode, Polarity::Positive) | (OccKind::ChorNode, Polarity::Negative) => Some(true),
        (OccKind::ChandNode, Polarity::Negative) | (OccKind::ChorNode, Polarity::Positive) => Some(false),
        _ => None,
    }
}

/// Choice resolutions in occurrence order then component order, built lazily.
pub(crate) fn resolutions_in<'a>(
    f: &'a Formula,
    occs: &'a [Occurrence],
    environment: bool,
) -> impl Iterator<Item = (Formula, &'a SpecPath, usize)> + 'a {
    occs.iter().filter(move |o| chooser(o) == Some(environment)).flat_map(move |occ| {
        choices(&occ.subject).iter().enumerate().map(move |(i, child)| {
            (replace_at(f, &occ.spec, child).expect("surface quasiatom"), &occ.spec, i + 1)
        })
    })
}

fn resolutions(f: &Formula, environment: bool) -> Vec<(Formula, SpecPath, usize)> {
    let occs = surface_quasiatoms(f);
    resolutions_in(f, &occs, environment).map(|(g, s, i)| (g, s.clone(), i)).collect()
}

/// Rule (a) premises: each positive surface `⊓` and negative surface `⊔`
/// occurrence replaced by each of its components, in occurrence order then
/// component order. Duplicates are kept.
pub fn premises_a(f: &Formula) -> Vec<Formula> {
    resolutions(f, true).into_iter().map(|(g, _, _)| g).collect()
}

/// Like [`premises_a`] but with the replaced occurrence and component index.
pub fn premises_a_detailed(f: &Formula) -> Vec<(Formula, SpecPath, usize)> {
    resolutions(f, true)
}

/// Rule (b) premises: a single negative surface `⊓` or positive surface `⊔`
/// occurrence replaced by one of its components.
pub fn premises_b(f: &Formula) -> Vec<PremiseB> {
    resolutions(f, false)
        .into_iter()
        .map(|(formula, spec, index)| PremiseB { formula, spec, index })
        .collect()
}

/// Rule (c) premises, using the first unused name `h1, h2, …` as the fresh atom.
///
/// General atoms are taken in order of first surface occurrence; for each,
/// every (positive, negative) pair of surface occurrences in occurrence order.
pub fn premises_c(f: &Formula) -> Vec<PremiseC> {
    premises_c_in(f, &surface_quasiatoms(f))
}

pub(crate) fn premises_c_in(f: &Formula, occs: &[Occurrence]) -> Vec<PremiseC> {
    let mut atoms: Vec<&Name> = Vec::new();
    for o in occs {
        if let Formula::General(p) = &o.subject {
            if !atoms.contains(&p) {
                atoms.push(p);
            }
        }
    }
    if atoms.is_empty() {
        return Vec::new();
    }
    let fresh = f.fresh_elem_name();
    let atom = Formula::Elem(fresh.clone());
    let mut out = Vec::new();
    for p in atoms {
        let of_sign = |pol: Polarity| -> Vec<&SpecPath> {
            occs.iter()
                .filter(|o| o.polarity == pol && matches!(&o.subject, Formula::General(q) if q == p))
                .map(|o| &o.spec)
                .collect()
        };
        for pos in of_sign(Polarity::Positive) {
            for neg in of_sign(Polarity::Negative) {
                let g = replace_at(f, pos, &atom).expect("surface atom");
                let g = replace_at(&g, neg, &atom).expect("surface atom");
                out.push(PremiseC {
                    formula: g,
                    pos_spec: pos.clone(),
                    neg_spec: neg.clone(),
                    general: p.clone(),
                    fresh: fresh.clone(),
                });
            }
        }
    }
    out
}
