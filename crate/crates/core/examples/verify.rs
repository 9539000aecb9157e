//! Exhaustive verification: every adversary behaviour under every
//! interpretation in a family.
//!
//!     cargo run --release --example verify -- "(P -> Q) -> (~Q -> ~P)"

use cl2::games::{Interpretation, Preset};
use cl2::strategy::verify_all;
use cl2::syntax::parse;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let formulas = if args.is_empty() {
        vec!["P & P -> P".to_string(), "P * Q -> P + Q".to_string(), "p & P -> p".to_string()]
    } else {
        args
    };
    for text in formulas {
        let f = parse(&text).unwrap();
        let family = Interpretation::family(&f, &Preset::standard());
        let report = verify_all(&f, &family).unwrap();
        println!(
            "{:<24} {:>3} interpretations {:>6} branches  ⊤ {:>6}  ⊥ {}  longest run {}  {}",
            report.formula,
            report.interpretations,
            report.branches,
            report.top_wins,
            report.bot_wins,
            report.max_run,
            if report.passed() { "PASS" } else { "FAIL" }
        );
        for v in report.violations.iter().take(3) {
            println!("    {} at {}: {}", v.interpretation, v.run, v.message);
        }
    }
}
