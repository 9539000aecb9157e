use super::{split_index, Formula, Polarity, SpecPath, SyntaxError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OccKind {
    Elementary,
    General,
    Hybrid,
    ChandNode,
    ChorNode,
}

impl OccKind {
    pub fn of(f: &Formula) -> Option<OccKind> {
        Some(match f {
            Formula::Elem(_) => OccKind::Elementary,
            Formula::General(_) => OccKind::General,
            Formula::Hybrid { .. } => OccKind::Hybrid,
            Formula::Chand(_) => OccKind::ChandNode,
            Formula::Chor(_) => OccKind::ChorNode,
            _ => return None,
        })
    }
}

/// A surface quasiatom together with its address.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occurrence {
    pub spec: SpecPath,
    pub polarity: Polarity,
    pub kind: OccKind,
    pub subject: Formula,
}

/// All surface quasiatoms, left to right. `⊤`/`⊥` are not atoms and are skipped.
pub fn surface_quasiatoms(f: &Formula) -> Vec<Occurrence> {
    fn go(f: &Formula, spec: &mut Vec<u32>, pol: Polarity, out: &mut Vec<Occurrence>) {
        if let Some(kind) = OccKind::of(f) {
            out.push(Occurrence {
                spec: SpecPath::from_indices(spec.iter().copied()),
                polarity: pol,
                kind,
                subject: f.clone(),
            });
            return;
        }
        match f {
            Formula::Neg(a) => go(a, spec, pol.flip(), out),
            Formula::Implies(a, b) => {
                spec.push(1);
                go(a, spec, pol.flip(), out);
                spec.pop();
                spec.push(2);
                go(b, spec, pol, out);
                spec.pop();
            }
            Formula::And(cs) | Formula::Or(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    spec.push(i as u32 + 1);
                    go(c, spec, pol, out);
                    spec.pop();
                }
            }
            _ => {}
        }
    }
    let mut out = Vec::new();
    go(f, &mut Vec::new(), Polarity::Positive, &mut out);
    out
}

/// One addressing step below `f` (negations are skipped by the caller).
fn step(f: &Formula, i: u32, pol: Polarity) -> Option<(&Formula, Polarity)> {
    let i = i as usize;
    match f {
        Formula::Implies(a, b) => match i {
            1 => Some((a, pol.flip())),
            2 => Some((b, pol)),
            _ => None,
        },
        Formula::And(cs) | Formula::Or(cs) => cs.get(i.checked_sub(1)?).map(|c| (c, pol)),
        _ => None,
    }
}

fn strip_negs(mut f: &Formula, mut pol: Polarity) -> (&Formula, Polarity) {
    while let Formula::Neg(a) = f {
        f = a;
        pol = pol.flip();
    }
    (f, pol)
}

/// The quasiatom addressed by `spec`, with its polarity.
pub fn locate<'a>(f: &'a Formula, spec: &SpecPath) -> Option<(&'a Formula, Polarity)> {
    let (mut cur, mut pol) = strip_negs(f, Polarity::Positive);
    for &i in spec.indices() {
        let (next, p) = step(cur, i, pol)?;
        (cur, pol) = strip_negs(next, p);
    }
    cur.is_quasiatom().then_some((cur, pol))
}

/// Replaces the quasiatom at `spec` by `g`, leaving everything else intact.
pub fn replace_at(f: &Formula, spec: &SpecPath, g: &Formula) -> Result<Formula, SyntaxError> {
    fn go(f: &Formula, path: &[u32], g: &Formula) -> Option<Formula> {
        match (f, path) {
            (Formula::Neg(a), _) => Some(Formula::neg(go(a, path, g)?)),
            (q, []) => q.is_quasiatom().then(|| g.clone()),
            (Formula::Implies(a, b), [i, rest @ ..]) => match i {
                1 => Some(Formula::implies(go(a, rest, g)?, (**b).clone())),
                2 => Some(Formula::implies((**a).clone(), go(b, rest, g)?)),
                _ => None,
            },
            (Formula::And(cs) | Formula::Or(cs), [i, rest @ ..]) => {
                let k = (*i as usize).checked_sub(1)?;
                let new = go(cs.get(k)?, rest, g)?;
                let mut kids = cs.to_vec();
                kids[k] = new;
                Some(f.with_children(kids))
            }
            _ => None,
        }
    }
    go(f, spec.indices(), g).ok_or_else(|| SyntaxError::NotQuasiatom(spec.to_string()))
}

/// Splits a move string into the spec of the surface quasiatom it enters and
/// the remaining suffix: `"1.2.1"` in `p & P -> p` is `("1.2.", "1")`.
///
/// Returns `None` when the move does not lead to any quasiatom.
pub fn split_move<'a, 'f>(f: &'f Formula, mv: &'a str) -> Option<(SpecPath, Polarity, &'f Formula, &'a str)> {
    let (mut cur, mut pol) = strip_negs(f, Polarity::Positive);
    let mut rest = mv;
    let mut path = Vec::new();
    while !cur.is_quasiatom() {
        let (i, tail) = split_index(rest)?;
        let (next, p) = step(cur, i, pol)?;
        (cur, pol) = strip_negs(next, p);
        path.push(i);
        rest = tail;
    }
    Some((SpecPath::from_indices(path), pol, cur, rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn specs(s: &str) -> Vec<(String, Polarity, OccKind)> {
        surface_quasiatoms(&parse(s).unwrap())
            .into_iter()
            .map(|o| (o.spec.to_string(), o.polarity, o.kind))
            .collect()
    }

    #[test]
    fn quasiatom_examples() {
        use OccKind::*;
        use Polarity::*;
        assert_eq!(
            specs("p & P -> p"),
            vec![
                ("1.1.".into(), Negative, Elementary),
                ("1.2.".into(), Negative, General),
                ("2.".into(), Positive, Elementary)
            ]
        );
        assert_eq!(specs("P + ~P"), vec![("".into(), Positive, ChorNode)]);
        assert_eq!(specs("P_q | ~P_q"), vec![("1.".into(), Positive, Hybrid), ("2.".into(), Negative, Hybrid)]);
        assert_eq!(specs("tt & ~ff"), vec![]);
    }

    #[test]
    fn replace_examples() {
        let f = parse("P + ~P").unwrap();
        assert_eq!(replace_at(&f, &SpecPath::root(), &parse("P").unwrap()).unwrap(), parse("P").unwrap());
        let f = parse("p & P -> p").unwrap();
        let q = parse("q").unwrap();
        assert_eq!(replace_at(&f, &"1.2.".parse().unwrap(), &q).unwrap(), parse("p & q -> p").unwrap());
        let f = parse("P & P -> P").unwrap();
        let g = replace_at(&f, &"2.".parse().unwrap(), &q).unwrap();
        let g = replace_at(&g, &"1.1.".parse().unwrap(), &q).unwrap();
        assert_eq!(g, parse("q & P -> q").unwrap());
        assert!(replace_at(&f, &"1.".parse().unwrap(), &q).is_err());
        assert!(replace_at(&f, &"3.".parse().unwrap(), &q).is_err());
    }

    #[test]
    fn split_move_examples() {
        let f = parse("p & P -> p").unwrap();
        let (spec, pol, node, rest) = split_move(&f, "1.2.1").unwrap();
        assert_eq!((spec.to_string(), pol, node.clone(), rest), ("1.2.".into(), Polarity::Negative, parse("P").unwrap(), "1"));
        assert!(split_move(&f, "7.3").is_none());
        assert!(split_move(&f, "1").is_none());
        let g = parse("~(P * Q)").unwrap();
        let (spec, pol, _, rest) = split_move(&g, "2").unwrap();
        assert_eq!((spec.to_string(), pol, rest), ("".into(), Polarity::Negative, "2"));
    }
}
