//! Turning a CL1 proof of a good ceiling into a CL2 proof of its floor.
//!
//!     cargo run --example translate -- "P * Q -> P + Q"

use cl2::calculus::{check_proof, prove, System};
use cl2::completeness::{ceiling, claim1_translate, floor, MMode};
use cl2::syntax::parse;

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "P & P -> P".into());
    let f = parse(&text).unwrap();
    let (up, scheme) = ceiling(&f, MMode::PerAtom).unwrap();
    println!("ceiling {up}");
    let Some(cl1) = prove(&up, System::Cl1).unwrap() else {
        println!("the ceiling is not CL1-provable, so {f} is not CL2-provable");
        return;
    };
    println!("CL1 proof has {} nodes", cl1.size());
    let cl2 = claim1_translate(&cl1, &scheme).unwrap();
    check_proof(&cl2, System::Cl2).expect("translation yields a CL2 proof");
    assert_eq!(cl2.conclusion, floor(&up, &scheme));
    println!("translated CL2 proof of {}:\n{}", cl2.conclusion, cl2.to_text());
}
