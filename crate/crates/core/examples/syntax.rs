//! Parsing, printing, surface occurrences and elementarization.
//!
//!     cargo run --example syntax -- "P & (p + q) -> P"

use cl2::classical::{elementarize, is_stable};
use cl2::syntax::{parse, surface_quasiatoms};

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "P & (p + q) -> P".into());
    let f = match parse(&text) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    println!("ascii      {f}");
    println!("unicode    {}", f.to_unicode());
    println!("canonical  {}", f.canonical());
    println!("connectives {}, general occurrences {}", f.connective_count(), f.count_general_occurrences());

    println!("surface quasiatoms:");
    for o in surface_quasiatoms(&f) {
        println!("  {:<6} {:<10} {:?} {:?}", o.spec.to_string(), o.subject.to_string(), o.polarity, o.kind);
    }

    let e = elementarize(&f);
    println!("elementarization {e}");
    println!("stable: {}", is_stable(&f));
}
