//! Elementarization, classical tautology checking and stability.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::syntax::{Formula, Name, Polarity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassicalError {
    #[error("`{0}` is not an elementary formula")]
    NotElementary(Formula),
}

/// Truth tables are used up to this many atoms; above it the checker splits
/// on atoms until the residue is small enough.
const TABLE_LIMIT: usize = 20;

/// `‖F‖`: surface `⊓` ↦ `⊤`, surface `⊔` ↦ `⊥`, positive general atoms ↦ `⊥`,
/// negative ones ↦ `⊤`, hybrid `P_q` ↦ `q`.
pub fn elementarize(f: &Formula) -> Formula {
    fn go(f: &Formula, pol: Polarity) -> Formula {
        match f {
            Formula::Chand(_) => Formula::Top,
            Formula::Chor(_) => Formula::Bot,
            Formula::General(_) if pol.is_positive() => Formula::Bot,
            Formula::General(_) => Formula::Top,
            Formula::Hybrid { elem, .. } => Formula::Elem(elem.clone()),
            Formula::Elem(_) | Formula::Top | Formula::Bot => f.clone(),
            Formula::Neg(a) => Formula::neg(go(a, pol.flip())),
            Formula::Implies(a, b) => Formula::implies(go(a, pol.flip()), go(b, pol)),
            Formula::And(cs) => Formula::And(cs.iter().map(|c| go(c, pol)).collect()),
            Formula::Or(cs) => Formula::Or(cs.iter().map(|c| go(c, pol)).collect()),
        }
    }
    go(f, Polarity::Positive)
}

/// Evaluates an elementary formula under `value`.
pub fn eval(f: &Formula, value: &impl Fn(&str) -> bool) -> bool {
    match f {
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Elem(p) => value(p),
        Formula::Neg(a) => !eval(a, value),
        Formula::And(cs) => cs.iter().all(|c| eval(c, value)),
        Formula::Or(cs) => cs.iter().any(|c| eval(c, value)),
        Formula::Implies(a, b) => !eval(a, value) || eval(b, value),
        _ => panic!("eval on non-elementary formula `{f}`"),
    }
}

/// Truth table of `f` over `atoms` as a packed bit vector: bit `k` is the
/// value under the assignment whose `i`-th atom is true iff bit `i` of `k` is set.
fn table(f: &Formula, atoms: &BTreeMap<Name, usize>, words: usize) -> Vec<u64> {
    match f {
        Formula::Top => vec![!0; words],
        Formula::Bot => vec![0; words],
        Formula::Elem(p) => {
            let i = atoms[p];
            if i < 6 {
                let pattern = ATOM_PATTERNS[i];
                vec![pattern; words]
            } else {
                let block = 1usize << (i - 6);
                (0..words).map(|w| if (w / block) % 2 == 1 { !0 } else { 0 }).collect()
            }
        }
        Formula::Neg(a) => {
            let mut t = table(a, atoms, words);
            t.iter_mut().for_each(|w| *w = !*w);
            t
        }
        Formula::And(cs) => {
            let mut t = table(&cs[0], atoms, words);
            for c in &cs[1..] {
                let u = table(c, atoms, words);
                t.iter_mut().zip(u).for_each(|(a, b)| *a &= b);
            }
            t
        }
        Formula::Or(cs) => {
            let mut t = table(&cs[0], atoms, words);
            for c in &cs[1..] {
                let u = table(c, atoms, words);
                t.iter_mut().zip(u).for_each(|(a, b)| *a |= b);
            }
            t
        }
        Formula::Implies(a, b) => {
            let mut t = table(a, atoms, words);
            let u = table(b, atoms, words);
            t.iter_mut().zip(u).for_each(|(a, b)| *a = !*a | b);
            t
        }
        _ => unreachable!("checked elementary"),
    }
}

const ATOM_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

fn table_tautology(f: &Formula, names: &[Name]) -> bool {
    let atoms: BTreeMap<Name, usize> = names.iter().cloned().zip(0..).collect();
    let n = names.len();
    let words = if n <= 6 { 1 } else { 1 << (n - 6) };
    let t = table(f, &atoms, words);
    if n < 6 {
        let mask = (1u64 << (1 << n)) - 1;
        t[0] & mask == mask
    } else {
        t.iter().all(|&w| w == !0)
    }
}

/// True iff `f` is true under every assignment to its atoms.
pub fn is_tautology(f: &Formula) -> Result<bool, ClassicalError> {
    if !f.is_elementary() {
        return Err(ClassicalError::NotElementary(f.clone()));
    }
    Ok(tautology_unchecked(f))
}

fn tautology_unchecked(f: &Formula) -> bool {
    let names: Vec<Name> = f.elem_atoms().into_iter().collect();
    if names.len() <= TABLE_LIMIT {
        return table_tautology(f, &names);
    }
    let split = &names[0];
    [Formula::Top, Formula::Bot].iter().all(|v| tautology_unchecked(&f.substitute_elem(split, v)))
}

/// `‖F‖` is a tautology.
pub fn is_stable(f: &Formula) -> bool {
    let mut names: Vec<&str> = Vec::new();
    let mut small = true;
    f.visit(&mut |g| {
        let name = match g {
            Formula::Elem(p) | Formula::Hybrid { elem: p, .. } => p,
            _ => return,
        };
        if !names.contains(&&**name) {
            names.push(name);
            small &= names.len() <= 6;
        }
    });
    if !small {
        return tautology_unchecked(&elementarize(f));
    }
    let n = names.len();
    let mask = if n == 6 { !0 } else { (1u64 << (1 << n)) - 1 };
    stable_word(f, Polarity::Positive, &names) & mask == mask
}

/// Truth table of `‖f‖` over at most six atoms, computed without building
/// the elementarization.
fn stable_word(f: &Formula, pol: Polarity, names: &[&str]) -> u64 {
    match f {
        Formula::Chand(_) | Formula::Top => !0,
        Formula::Chor(_) | Formula::Bot => 0,
        Formula::General(_) if pol.is_positive() => 0,
        Formula::General(_) => !0,
        Formula::Elem(p) | Formula::Hybrid { elem: p, .. } => {
            ATOM_PATTERNS[names.iter().position(|n| *n == &**p).expect("collected")]
        }
        Formula::Neg(a) => !stable_word(a, pol.flip(), names),
        Formula::Implies(a, b) => !stable_word(a, pol.flip(), names) | stable_word(b, pol, names),
        Formula::And(cs) => cs.iter().fold(!0, |w, c| w & stable_word(c, pol, names)),
        Formula::Or(cs) => cs.iter().fold(0, |w, c| w | stable_word(c, pol, names)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn elementarize_examples() {
        assert_eq!(elementarize(&p("P | ~P")), p("ff | ~tt"));
        assert_eq!(elementarize(&p("P_q | ~P_q")), p("q | ~q"));
        assert_eq!(elementarize(&p("p & P -> p")), p("p & tt -> p"));
        assert_eq!(elementarize(&p("(P * q) | ~(Q + r)")), p("tt | ~ff"));
    }

    #[test]
    fn tautology_examples() {
        assert!(is_tautology(&p("q | ~q")).unwrap());
        assert!(!is_tautology(&p("ff | ~tt")).unwrap());
        assert!(is_tautology(&p("p & tt -> p")).unwrap());
        assert!(is_tautology(&p("P | ~P")).is_err());
        assert!(is_tautology(&p("p * q")).is_err());
    }

    #[test]
    fn stability_examples() {
        assert!(!is_stable(&p("P -> P & P")));
        assert!(is_stable(&p("p & P -> p")));
        assert!(is_stable(&p("P_q | ~P_q")));
    }

    fn brute(f: &Formula) -> bool {
        let names: Vec<Name> = f.elem_atoms().into_iter().collect();
        (0..1u32 << names.len()).all(|bits| {
            eval(f, &|a: &str| {
                let i = names.iter().position(|n| &**n == a).unwrap();
                bits >> i & 1 == 1
            })
        })
    }

    #[test]
    fn wide_tables_agree_with_evaluation() {
        let names: Vec<String> = (1..=9).map(|i| format!("x{i}")).collect();
        let lits: Vec<Formula> = names.iter().map(|n| Formula::elem(n)).collect();
        let taut = Formula::or(lits.iter().map(|l| Formula::and(vec![l.clone(), l.clone()])).chain([
            Formula::and(lits.iter().map(|l| Formula::neg(l.clone())).collect()),
        ]).collect());
        assert!(brute(&taut));
        assert!(is_tautology(&taut).unwrap());
        let not_taut = Formula::or(lits[..8].to_vec());
        assert!(!is_tautology(&not_taut).unwrap());
    }

    #[test]
    fn splitting_beyond_table_limit() {
        let lits: Vec<Formula> = (1..=23).map(|i| Formula::elem(&format!("x{i}"))).collect();
        let mut disj: Vec<Formula> = lits.clone();
        disj.push(Formula::and(lits.iter().map(|l| Formula::neg(l.clone())).collect()));
        assert!(is_tautology(&Formula::or(disj)).unwrap());
        assert!(!is_tautology(&Formula::or(lits)).unwrap());
    }
}
