//! Constant games: legal moves, prefixation and winners, and how formulas
//! become games under an interpretation.

use cl2::games::{interpret, show_run, Game, Interpretation, LabeledMove, Player, Preset};
use cl2::syntax::parse;

fn main() {
    // (⊤ ⊓ ⊥) ∨ ¬(⊤ ⊓ ⊥): ⊤ wins by copying ⊥'s choice to the other side.
    let a = Game::chand(vec![Game::TOP, Game::BOT]);
    let g = Game::or(vec![a.clone(), Game::neg(a)]);
    println!("game   {g}");
    println!("value  {} (nobody moves)", g.value());
    println!("moves  {:?}", g.legal_moves().iter().map(ToString::to_string).collect::<Vec<_>>());

    let run = vec![LabeledMove::bot("1.2"), LabeledMove::top("2.2")];
    println!("after {}: {}", show_run(&run), g.prefix(&run).unwrap());
    println!("winner {}", g.winner(&run));

    let bad = vec![LabeledMove::top("1.1")];
    println!("{} is illegal at move {:?}; the offender loses", show_run(&bad), g.first_illegal(&bad));
    assert_eq!(g.winner(&bad), Player::Bot);

    let f = parse("P & p -> P").unwrap();
    for preset in [Preset::Molecule2(true, false), Preset::Irregular1] {
        let i = Interpretation::new().with_elem("p", Player::Bot).with_general("P", preset.game());
        let game = interpret(&f, &i).unwrap();
        println!("{f} under P = {preset}, p = ⊥:\n  {game}\n  {} legal runs", game.legal_runs().len());
    }
}
