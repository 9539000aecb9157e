//! Formulas and hyperformulas: AST, parser, printer, occurrence addressing.

mod formula;
mod occurrence;
mod parser;
mod spec;

pub use formula::{Formula, Name};
pub use occurrence::{locate, replace_at, split_move, surface_quasiatoms, OccKind, Occurrence};
pub use parser::{parse, parse_with_reserved};
pub use spec::{Polarity, SpecPath};
pub(crate) use spec::{parse_choice, split_index};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("syntax error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("malformed spec `{0}`")]
    BadSpec(String),
    #[error("spec `{0}` does not address a quasiatom")]
    NotQuasiatom(String),
}
