//! On elementary formulas CL2, CL1 and classical validity coincide. Checks
//! every formula over {p, q} up to a number of connectives.
//!
//!     cargo run --release --example conservativity -- 4

use cl2::calculus::{Decider, System};
use cl2::classical::is_tautology;
use cl2::enumerate::{Connective, Enumeration};
use cl2::syntax::Formula;

fn main() {
    let depth: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let connectives = [Connective::Neg, Connective::And, Connective::Or, Connective::Implies];
    let mut e = Enumeration::new(vec![Formula::elem("p"), Formula::elem("q")], &connectives);
    let mut cl1 = Decider::new(System::Cl1).with_memo_cap(1 << 20);
    let mut cl2 = Decider::new(System::Cl2).with_memo_cap(1 << 20);
    for n in 0..=depth {
        let (mut total, mut valid) = (0u64, 0u64);
        e.for_each(n, |f| {
            let t = is_tautology(&f).unwrap();
            assert_eq!(cl1.decide_once(&f).unwrap(), t, "CL1 on {f}");
            assert_eq!(cl2.decide_once(&f).unwrap(), t, "CL2 on {f}");
            total += 1;
            valid += u64::from(t);
        });
        println!("{n} connectives: {total:>7} formulas, {valid:>6} valid, all three agree");
    }
}
