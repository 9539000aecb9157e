//! Legality decided from the compositional characterization alone, without
//! the game engine's move application.

use crate::games::{Game, LabeledMove, Player};

fn index(s: &str, n: usize) -> Option<usize> {
    if s.is_empty() || s.starts_with('0') || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let i: usize = s.parse().ok()?;
    (1..=n).contains(&i).then_some(i - 1)
}

/// Whether `run` is a legal position of `g`.
///
/// Elementary games admit only the empty run; `¬A` admits `Γ` iff `A`
/// admits `¬Γ`; a parallel combination admits `Γ` iff every move is `i.β`
/// and each projection is legal in its component; a choice combination
/// admits the empty run or an opening owner move `i` followed by a legal
/// run of the i-th component.
pub fn is_legal(g: &Game, run: &[LabeledMove]) -> bool {
    match g {
        Game::Triv(_) => run.is_empty(),
        Game::Neg(a) => {
            let flipped: Vec<_> = run.iter().map(|m| LabeledMove::new(m.player.flip(), m.mv.clone())).collect();
            is_legal(a, &flipped)
        }
        Game::And(cs) | Game::Or(cs) => {
            let mut parts = vec![Vec::new(); cs.len()];
            for m in run {
                let Some((head, tail)) = m.mv.split_once('.') else { return false };
                let Some(i) = index(head, cs.len()) else { return false };
                parts[i].push(LabeledMove::new(m.player, tail));
            }
            cs.iter().zip(&parts).all(|(c, p)| is_legal(c, p))
        }
        Game::Chand(cs) | Game::Chor(cs) => {
            let owner = if matches!(g, Game::Chand(_)) { Player::Bot } else { Player::Top };
            match run.split_first() {
                None => true,
                Some((first, rest)) => {
                    first.player == owner && index(&first.mv, cs.len()).is_some_and(|i| is_legal(&cs[i], rest))
                }
            }
        }
    }
}

/// Every move string that could conceivably be addressed to `g` or to any
/// game it can evolve into, including out-of-range indices, under both labels.
pub fn candidate_moves(g: &Game) -> Vec<LabeledMove> {
    fn go(g: &Game, prefix: &str, out: &mut Vec<String>) {
        match g {
            Game::Triv(_) => {}
            Game::Neg(a) => go(a, prefix, out),
            Game::And(cs) | Game::Or(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    go(c, &format!("{prefix}{}.", i + 1), out);
                }
                out.push(format!("{prefix}{}.1", cs.len() + 1));
            }
            Game::Chand(cs) | Game::Chor(cs) => {
                for i in 1..=cs.len() + 1 {
                    out.push(format!("{prefix}{i}"));
                }
                for c in cs.iter() {
                    go(c, prefix, out);
                }
            }
        }
    }
    let mut strings = vec!["0".to_string(), "1.".to_string(), String::new()];
    go(g, "", &mut strings);
    strings.sort();
    strings.dedup();
    strings.into_iter().flat_map(|s| [LabeledMove::top(s.clone()), LabeledMove::bot(s)]).collect()
}
