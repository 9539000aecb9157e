//! The proof-driven machine strategy, adversaries, and the exhaustive verifier.

mod adversary;
mod session;
mod verify;

use thiserror::Error;

pub use adversary::{playout, Adversary, Decision, Playout, RandomAdversary, ScriptedAdversary};
pub use session::{MoveOutcome, Phase, Session, SessionState};
pub use verify::{strategy_for, verify_all, Report, Violation};

use crate::calculus::{CalcError, ProofError};
use crate::games::GameError;
use crate::syntax::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("not a CL2° proof: {0}")]
    BadProof(ProofError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("interpretation does not cover every atom of `{0}`")]
    Uncovered(Formula),
    #[error("awaiting adversary")]
    AwaitingAdversary,
    #[error("the machine has pending moves")]
    MachineToMove,
    #[error("session finished")]
    Finished,
    #[error("`{0}` is not provable in CL2")]
    Unprovable(Formula),
    #[error(transparent)]
    Calc(#[from] CalcError),
}

#[cfg(test)]
mod tests;
