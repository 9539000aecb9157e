use std::sync::Arc;

use super::*;
use crate::calculus::{hybridize, ProofNode, Rule};
use crate::games::{Game, Interpretation, Player, Preset};
use crate::syntax::parse;

fn f(s: &str) -> Formula {
    parse(s).unwrap()
}

fn chand_tb() -> Game {
    Game::chand(vec![Game::TOP, Game::BOT])
}

fn chor_tb() -> Game {
    Game::chor(vec![Game::TOP, Game::BOT])
}

fn session(s: &str, interp: Interpretation) -> Session {
    Session::new(strategy_for(&f(s)).unwrap(), Arc::new(interp)).unwrap()
}

#[test]
fn excluded_middle_session() {
    let mut s = session("P | ~P", Interpretation::new().with_general("P", chand_tb()));
    assert_eq!(s.e(), &f("P | ~P"));
    assert_eq!(s.phase(), Phase::MainLoop);
    assert_eq!(s.machine_flush().unwrap(), Vec::<String>::new());
    assert_eq!(s.e(), &f("P_h1 | ~P_h1"));
    assert_eq!(s.phase(), Phase::InnerWait);
    assert_eq!(s.machine_flush(), Err(StrategyError::AwaitingAdversary));
    assert_eq!(s.adversary_moves(), vec!["1.1", "1.2"]);
}

#[test]
fn session_rejects_cl2_proofs() {
    let proof = crate::calculus::prove(&f("P | ~P"), crate::calculus::System::Cl2).unwrap().unwrap();
    let interp = Arc::new(Interpretation::new().with_general("P", chand_tb()));
    assert!(matches!(Session::new(Arc::new(proof), interp.clone()), Err(StrategyError::BadProof(_))));
    let taut = strategy_for(&f("p | ~p")).unwrap();
    let mut s = Session::new(taut, Arc::new(Interpretation::new().with_elem("p", Player::Top))).unwrap();
    s.machine_flush().unwrap();
    assert_eq!(s.phase(), Phase::InnerWait);
    let uncovered = Session::new(strategy_for(&f("p | ~p")).unwrap(), interp);
    assert!(matches!(uncovered, Err(StrategyError::Uncovered(_))));
}

#[test]
fn rule_b_node_emits_choice() {
    let proof = strategy_for(&f("(p * q) -> (p * q)")).unwrap();
    assert_eq!(proof.rule, Rule::A);
    assert_eq!(proof.children[0].rule, Rule::B { spec: "1.".parse().unwrap(), index: 1 });
    let interp = Interpretation::new().with_elem("p", Player::Top).with_elem("q", Player::Bot);
    let mut s = Session::new(proof, Arc::new(interp)).unwrap();
    s.machine_flush().unwrap();
    assert_eq!(s.adversary_move("2.1").unwrap(), MoveOutcome::Choice);
    assert_eq!(s.machine_flush().unwrap(), vec!["1.1"]);
    assert_eq!(s.adversary_stop().unwrap(), Player::Top);
    assert!(s.violations().is_empty());
}

#[test]
fn mirrored_move_in_hybrid_atom() {
    let mut s = session("P | ~P", Interpretation::new().with_general("P", chor_tb()));
    s.machine_flush().unwrap();
    assert_eq!(s.adversary_move("2.1").unwrap(), MoveOutcome::Mirrored { reply: "1.1".into() });
    assert_eq!(s.omega(), &vec![crate::games::LabeledMove::bot("2.1"), crate::games::LabeledMove::top("1.1")]);
    assert!(crate::games::is_manageable(s.omega(), s.e()).is_ok());
    assert_eq!(s.adversary_stop().unwrap(), Player::Top);
    assert!(s.violations().is_empty());
}

#[test]
fn move_in_general_atom_is_recorded() {
    let worked = ProofNode {
        conclusion: f("P & P -> P"),
        rule: Rule::C {
            pos_spec: "2.".parse().unwrap(),
            neg_spec: "1.1.".parse().unwrap(),
            general: "P".into(),
            fresh: "p".into(),
        },
        children: vec![ProofNode::leaf(f("p & P -> p"))],
    };
    let proof = Arc::new(hybridize(&worked).unwrap());
    let mut s = Session::new(proof, Arc::new(Interpretation::new().with_general("P", chor_tb()))).unwrap();
    s.machine_flush().unwrap();
    assert_eq!(s.e(), &f("P_p & P -> P_p"));
    assert_eq!(s.adversary_move("1.2.1").unwrap(), MoveOutcome::General);
    assert_eq!(s.omega().len(), 1);
    assert!(s.violations().is_empty());
    assert!(matches!(s.adversary_move("7.3").unwrap(), MoveOutcome::Forfeit { .. }));
    assert_eq!(s.result(), Some(Player::Top));
    assert_eq!(s.adversary_stop(), Err(StrategyError::Finished));
}

#[test]
fn stopping_and_tampering() {
    let interp = Interpretation::new().with_general("P", chor_tb());
    let mut s = session("P | ~P", interp.clone());
    s.machine_flush().unwrap();
    assert_eq!(s.adversary_stop().unwrap(), Player::Top);

    let mut s = session("P | ~P", interp);
    s.machine_flush().unwrap();
    s.adversary_move("2.1").unwrap();
    let mut without_reply = s.theta().clone();
    without_reply.pop();
    s.tamper_history(without_reply);
    assert_eq!(s.adversary_stop().unwrap(), Player::Bot);
}

#[test]
fn scripted_playouts() {
    let proof = strategy_for(&f("P | ~P")).unwrap();
    let interp = Arc::new(Interpretation::new().with_general("P", chand_tb()));
    let out = playout(proof, interp, &mut ScriptedAdversary::new(["1.1"])).unwrap();
    assert_eq!(out.machine_moves, vec!["2.1"]);
    assert_eq!(out.winner, Player::Top);

    let proof = strategy_for(&f("p | ~p")).unwrap();
    let interp = Arc::new(Interpretation::new().with_elem("p", Player::Top));
    let out = playout(proof, interp, &mut ScriptedAdversary::new(Vec::<String>::new())).unwrap();
    assert_eq!(out.winner, Player::Top);

    let proof = strategy_for(&f("P -> P * P")).unwrap();
    let interp = Arc::new(Interpretation::new().with_general("P", chand_tb()));
    for script in [vec!["2.1"], vec!["2.2", "2.1"], vec!["2.1", "1.2"], vec!["2.2", "2.2", "1.1"]] {
        let out = playout(proof.clone(), interp.clone(), &mut ScriptedAdversary::new(script.clone())).unwrap();
        assert_eq!(out.winner, Player::Top, "{script:?}");
        assert!(out.violations.is_empty());
    }
}

#[test]
fn exhaustive_examples() {
    let family = |s: &str, presets: &[Preset]| Interpretation::family(&f(s), presets);
    let r = verify_all(&f("P | ~P"), &family("P | ~P", &Preset::molecules2())).unwrap();
    assert!(r.passed(), "{r:?}");
    let r = verify_all(&f("P & P -> P"), &family("P & P -> P", &Preset::molecules2())).unwrap();
    assert!(r.passed(), "{r:?}");
    let blass = "(P & Q) | (R & S) -> (P | R) & (Q | S)";
    let r = verify_all(&f(blass), &family(blass, &[Preset::Molecule1(true), Preset::Molecule1(false)])).unwrap();
    assert!(r.passed(), "{r:?}");
    assert!(matches!(verify_all(&f("P + ~P"), &[]), Err(StrategyError::Unprovable(_))));
}

#[test]
fn machine_ignores_the_interpretation() {
    use crate::games::Preset::Molecule2;
    let proof = strategy_for(&f("(P & Q) | (R & S) -> (P | R) & (Q | S)")).unwrap();
    let base = |p: Preset| {
        let g = p.game();
        Arc::new(Interpretation::new().with_general("P", g.clone()).with_general("Q", g.clone()).with_general("R", g.clone()).with_general("S", g))
    };
    for seed in 0..40 {
        let a = playout(proof.clone(), base(Molecule2(true, false)), &mut RandomAdversary::new(seed, 0.05)).unwrap();
        let script: Vec<String> = a.run.iter().filter(|m| m.player == Player::Bot).map(|m| m.mv.clone()).collect();
        for other in [Molecule2(false, false), Molecule2(true, true), Molecule2(false, true)] {
            let b = playout(proof.clone(), base(other), &mut ScriptedAdversary::new(script.clone())).unwrap();
            assert_eq!(a.machine_moves, b.machine_moves);
            assert_eq!(b.winner, Player::Top);
        }
    }
}
