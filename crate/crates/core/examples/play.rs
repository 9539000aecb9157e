//! Playing the strategy extracted from a proof, by hand and against a
//! random adversary.

use std::sync::Arc;

use cl2::games::{show_run, Interpretation, Player, Preset};
use cl2::strategy::{playout, strategy_for, MoveOutcome, RandomAdversary, Session};
use cl2::syntax::parse;

fn main() {
    let f = parse("P & P -> P").unwrap();
    let proof = strategy_for(&f).unwrap();
    let interp = Arc::new(Interpretation::new().with_general("P", Preset::Molecule2(true, false).game()));

    let mut s = Session::new(proof.clone(), interp.clone()).unwrap();
    println!("machine opens with {:?}", s.machine_flush().unwrap());
    println!("position {}", s.residual());
    let mut turn = 0;
    while let Some(mv) = s.adversary_moves().into_iter().find(|m| m.starts_with("2.")) {
        match s.adversary_move(&mv).unwrap() {
            MoveOutcome::Mirrored { reply } => println!("⊥ {mv:<6} ⊤ copies it as {reply}"),
            other => println!("⊥ {mv:<6} {other:?}"),
        }
        turn += 1;
        if turn == 2 {
            break;
        }
    }
    let winner = s.adversary_stop().unwrap();
    println!("run {}  winner {winner}", show_run(s.theta()));
    assert_eq!(winner, Player::Top);

    let mut wins = 0;
    for seed in 0..200 {
        let p = playout(proof.clone(), interp.clone(), &mut RandomAdversary::new(seed, 0.15)).unwrap();
        assert!(p.violations.is_empty(), "{:?}", p.violations);
        wins += usize::from(p.winner == Player::Top);
    }
    println!("⊤ won {wins}/200 random plays");
}
