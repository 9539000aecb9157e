//! Provability in CL1 and CL2, with the subgoals the search settled.
//!
//!     cargo run --example decide -- "P & P -> P"

use cl2::calculus::{Decider, System};
use cl2::syntax::parse;

const SAMPLES: &[&str] = &[
    "P & P -> P",
    "P -> P & P",
    "P * Q -> P + Q",
    "(P -> Q) -> (~Q -> ~P)",
    "P & Q -> P + Q",
    "p | ~p",
    "(p * q) -> (p * q)",
];

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let formulas: Vec<&str> = if args.is_empty() { SAMPLES.to_vec() } else { args.iter().map(String::as_str).collect() };
    for text in formulas {
        let f = parse(text).expect("formula parses");
        let mut d = Decider::new(System::Cl2);
        let provable = d.decide(&f).unwrap();
        println!("{:<28} {}", f.to_string(), if provable { "provable" } else { "unprovable" });
        if f.is_elementary_base() {
            let cl1 = Decider::new(System::Cl1).decide(&f).unwrap();
            assert_eq!(cl1, provable, "CL2 is conservative over CL1");
        }
        for (g, w) in d.trace().into_iter().take(6) {
            match w {
                Some(w) => println!("    ✓ {g}  {w:?}"),
                None => println!("    ✗ {g}"),
            }
        }
    }
}
