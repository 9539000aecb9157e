//! The randomized lemma suites, with their seeds.
//!
//!     cargo run --release --example lemmas -- 500 42

use cl2::lemmas::{run_suite, Suite};

fn main() {
    let mut args = std::env::args().skip(1);
    let cases = args.next().and_then(|s| s.parse().ok()).unwrap_or(100);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    for suite in Suite::ALL {
        let r = run_suite(suite, cases, seed);
        println!("{} {:<26} {}", if r.passed { "PASS" } else { "FAIL" }, suite.name(), suite.statement());
        if let Some(c) = r.counterexample {
            println!("{}\n{c}", r.reason.unwrap_or_default());
        }
    }
}
