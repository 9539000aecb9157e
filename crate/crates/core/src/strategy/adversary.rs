use std::collections::VecDeque;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{MoveOutcome, Session, StrategyError};
use crate::calculus::ProofNode;
use crate::games::{Interpretation, Player, Run};

/// What the environment does when the machine is waiting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Move(String),
    Stop,
}

pub trait Adversary {
    fn decide(&mut self, session: &Session) -> Decision;
}

/// Picks uniformly among legal moves, stopping with probability `stop`
/// (and always when no move is left).
pub struct RandomAdversary {
    rng: ChaCha8Rng,
    stop: f64,
}

impl RandomAdversary {
    pub fn new(seed: u64, stop: f64) -> RandomAdversary {
        RandomAdversary { rng: ChaCha8Rng::seed_from_u64(seed), stop }
    }
}

impl Adversary for RandomAdversary {
    fn decide(&mut self, session: &Session) -> Decision {
        let moves = session.adversary_moves();
        if moves.is_empty() || self.rng.gen_bool(self.stop) {
            return Decision::Stop;
        }
        Decision::Move(moves[self.rng.gen_range(0..moves.len())].clone())
    }
}

/// Plays the given moves in order, then stops.
pub struct ScriptedAdversary {
    moves: VecDeque<String>,
}

impl ScriptedAdversary {
    pub fn new<S: Into<String>>(moves: impl IntoIterator<Item = S>) -> ScriptedAdversary {
        ScriptedAdversary { moves: moves.into_iter().map(Into::into).collect() }
    }
}

impl Adversary for ScriptedAdversary {
    fn decide(&mut self, _: &Session) -> Decision {
        self.moves.pop_front().map_or(Decision::Stop, Decision::Move)
    }
}

/// A finished play.
#[derive(Debug, Clone)]
pub struct Playout {
    pub run: Run,
    pub winner: Player,
    /// Moves made by the machine, in order.
    pub machine_moves: Vec<String>,
    pub violations: Vec<String>,
}

/// Plays the strategy of `proof` against `adversary` until the run ends.
pub fn playout(
    proof: Arc<ProofNode>,
    interp: Arc<Interpretation>,
    adversary: &mut dyn Adversary,
) -> Result<Playout, StrategyError> {
    let mut s = Session::new(proof, interp)?;
    let mut machine_moves = s.machine_flush()?;
    let winner = loop {
        match adversary.decide(&s) {
            Decision::Stop => break s.adversary_stop()?,
            Decision::Move(mv) => match s.adversary_move(&mv)? {
                MoveOutcome::Forfeit { .. } => break s.result().expect("finished"),
                MoveOutcome::Mirrored { reply } => machine_moves.push(reply),
                MoveOutcome::General => {}
                MoveOutcome::Choice => machine_moves.extend(s.machine_flush()?),
            },
        }
    };
    Ok(Playout { run: s.theta().clone(), winner, machine_moves, violations: s.violations().to_vec() })
}
