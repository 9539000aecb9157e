//! Finite constant games: interpretation, legality, prefixation, winners,
//! run projections, delays and manageability.

mod game;
mod interp;
mod manage;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use game::{Game, GameTerm};
pub use interp::{interpret, molecule, Interpretation, Preset};
pub use manage::{
    is_delay, is_manageable, is_top_delay, negate_run, project, project_out, signed_project, Manageability, Manager,
};

use crate::syntax::Name;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    #[serde(rename = "T")]
    Top,
    #[serde(rename = "B")]
    Bot,
}

impl Player {
    pub fn flip(self) -> Player {
        match self {
            Player::Top => Player::Bot,
            Player::Bot => Player::Top,
        }
    }

    pub fn from_bool(b: bool) -> Player {
        if b {
            Player::Top
        } else {
            Player::Bot
        }
    }

    pub fn is_top(self) -> bool {
        self == Player::Top
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_top() { "⊤" } else { "⊥" })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabeledMove {
    pub player: Player,
    #[serde(rename = "move")]
    pub mv: String,
}

impl LabeledMove {
    pub fn new(player: Player, mv: impl Into<String>) -> LabeledMove {
        LabeledMove { player, mv: mv.into() }
    }

    pub fn top(mv: impl Into<String>) -> LabeledMove {
        LabeledMove::new(Player::Top, mv)
    }

    pub fn bot(mv: impl Into<String>) -> LabeledMove {
        LabeledMove::new(Player::Bot, mv)
    }
}

impl fmt::Display for LabeledMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.player, self.mv)
    }
}

pub type Run = Vec<LabeledMove>;

/// Renders a run as `⟨⊥1.1, ⊤2.1⟩`.
pub fn show_run(run: &[LabeledMove]) -> String {
    let parts: Vec<String> = run.iter().map(ToString::to_string).collect();
    format!("⟨{}⟩", parts.join(", "))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("move #{index} {player}{mv} is illegal: {reason}")]
    IllegalMove { index: usize, player: Player, mv: String, reason: String },
    #[error("atom `{0}` is not interpreted")]
    Unmapped(Name),
    #[error("bad interpretation: {0}")]
    BadInterpretation(String),
    #[error("spec `{0}` does not address a quasiatom")]
    NotQuasiatom(String),
}
