//! Proof trees: search, rendering, JSON round trip, checking, and the
//! conversion of rule (c) steps into hybrid-atom steps.

use cl2::calculus::{check_proof, hybridize, prove, ProofNode, System};
use cl2::syntax::parse;

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "P & P -> P".into());
    let f = parse(&text).expect("formula parses");
    let Some(proof) = prove(&f, System::Cl2).unwrap() else {
        println!("{f} is not provable in CL2");
        return;
    };
    println!("CL2 proof:\n{}", proof.to_text());
    check_proof(&proof, System::Cl2).expect("search returns valid proofs");

    let json = proof.to_json();
    let back = ProofNode::from_json(&json).unwrap();
    assert_eq!(back, proof);
    println!("JSON form is {} bytes and reads back unchanged", json.len());

    let circ = hybridize(&proof).unwrap();
    println!("CL2° proof:\n{}", circ.to_text());
    check_proof(&circ, System::Cl2Circ).expect("hybridized proof checks");
    println!("every node balanced: {}", {
        let mut ok = true;
        circ.visit(&mut |_, n| ok &= n.conclusion.is_balanced());
        ok
    });
}
