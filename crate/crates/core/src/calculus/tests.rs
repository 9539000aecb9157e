use super::*;
use crate::syntax::{parse, SpecPath};

fn p(s: &str) -> Formula {
    parse(s).unwrap()
}

#[test]
fn golden_verdicts() {
    let table = [
        ("P | ~P", true),
        ("P + ~P", false),
        ("P -> P * P", true),
        ("(P & Q) | (R & S) -> (P | R) & (Q | S)", true),
        ("p & (p -> Q) & (p -> R) -> Q & R", true),
        ("P & (P -> Q) & (P -> R) -> Q & R", false),
        ("P * (Q | R) -> (P * Q) | (P * R)", true),
        ("(P * Q) | (P * R) -> P * (Q | R)", false),
        ("(p * Q) | (p * R) -> p * (Q | R)", true),
        ("P & P -> P", true),
        ("P -> P & P", false),
    ];
    for (s, want) in table {
        assert_eq!(decide(&p(s), System::Cl2).unwrap(), want, "{s}");
    }
}

#[test]
fn cl1_rejects_general_atoms() {
    assert!(matches!(decide(&p("P | ~P"), System::Cl1), Err(CalcError::NotElementaryBase(_))));
    assert!(matches!(decide(&p("P_q | ~P_q"), System::Cl2), Err(CalcError::HybridInput(_))));
    assert!(decide(&p("p | ~p"), System::Cl1).unwrap());
    assert!(!decide(&p("p + ~p"), System::Cl1).unwrap());
}

fn worked_example() -> ProofNode {
    ProofNode {
        conclusion: p("P & P -> P"),
        rule: Rule::C {
            pos_spec: "2.".parse().unwrap(),
            neg_spec: "1.1.".parse().unwrap(),
            general: "P".into(),
            fresh: "p".into(),
        },
        children: vec![ProofNode::leaf(p("p & P -> p"))],
    }
}

#[test]
fn worked_example_checks() {
    assert_eq!(check_proof(&worked_example(), System::Cl2), Ok(()));
    let found = prove(&p("P & P -> P"), System::Cl2).unwrap().unwrap();
    assert!(matches!(found.rule, Rule::C { .. }));
    assert_eq!(found.children[0].conclusion, p("h1 & P -> h1"));
    assert_eq!(found.children[0].rule, Rule::A);
    assert!(found.children[0].children.is_empty());
    assert!(prove(&p("P -> P & P"), System::Cl2).unwrap().is_none());
    assert_eq!(prove(&p("p | ~p"), System::Cl1).unwrap().unwrap(), ProofNode::leaf(p("p | ~p")));
}

#[test]
fn checker_reports_violations() {
    let mut stale = worked_example();
    stale.conclusion = p("p & P -> P");
    stale.children[0] = ProofNode::leaf(p("p & P -> p"));
    let err = check_proof(&stale, System::Cl2).unwrap_err();
    assert_eq!(err.violation, "fresh atom occurs in conclusion");
    assert!(err.path.is_empty());

    let unstable = ProofNode::leaf(p("P -> P & P"));
    assert_eq!(check_proof(&unstable, System::Cl2).unwrap_err().violation, "conclusion not stable");

    let wrong_premises = ProofNode { children: vec![], ..ProofNode::leaf(p("P -> P * P")) };
    assert_eq!(check_proof(&wrong_premises, System::Cl2).unwrap_err().violation, "premises do not match rule (a)");

    let in_cl1 = check_proof(&worked_example(), System::Cl1).unwrap_err();
    assert!(in_cl1.violation.contains("CL1"), "{in_cl1}");

    let wrong_b = ProofNode {
        conclusion: p("P + ~P"),
        rule: Rule::B { spec: SpecPath::root(), index: 3 },
        children: vec![ProofNode::leaf(p("P"))],
    };
    assert_eq!(check_proof(&wrong_b, System::Cl2).unwrap_err().violation, "rule (b) index out of range");
}

#[test]
fn hybridize_worked_example() {
    let h = hybridize(&worked_example()).unwrap();
    assert_eq!(h.rule, Rule::CCirc { general: "P".into(), elem: "p".into() });
    assert_eq!(h.children[0].conclusion, p("P_p & P -> P_p"));
    assert_eq!(check_proof(&h, System::Cl2Circ), Ok(()));
    assert!(check_proof(&h, System::Cl2).is_err());

    let taut = prove(&p("p | ~p"), System::Cl2).unwrap().unwrap();
    assert_eq!(hybridize(&taut).unwrap(), taut);

    let em = hybridize(&prove(&p("P | ~P"), System::Cl2).unwrap().unwrap()).unwrap();
    assert!(matches!(em.rule, Rule::CCirc { .. }));
    assert_eq!(em.children[0].conclusion, p("P_h1 | ~P_h1"));
    assert_eq!(check_proof(&em, System::Cl2Circ), Ok(()));
}

#[test]
fn proofs_of_golden_formulas_check() {
    for s in [
        "P | ~P",
        "P -> P * P",
        "(P & Q) | (R & S) -> (P | R) & (Q | S)",
        "p & (p -> Q) & (p -> R) -> Q & R",
        "P * (Q | R) -> (P * Q) | (P * R)",
        "(p * Q) | (p * R) -> p * (Q | R)",
    ] {
        let proof = prove(&p(s), System::Cl2).unwrap().unwrap();
        assert_eq!(check_proof(&proof, System::Cl2), Ok(()), "{s}");
        let circ = hybridize(&proof).unwrap();
        assert_eq!(check_proof(&circ, System::Cl2Circ), Ok(()), "{s}");
        assert_eq!(ProofNode::from_json(&circ.to_json()).unwrap(), circ);
    }
}

#[test]
fn budget_is_reported() {
    let f = p("(P & Q) | (R & S) -> (P | R) & (Q | S)");
    let mut d = Decider::with_budget(System::Cl2, Budget { max_nodes: Some(3), time: None });
    assert!(matches!(d.decide(&f), Err(CalcError::BudgetExceeded { .. })));
}
