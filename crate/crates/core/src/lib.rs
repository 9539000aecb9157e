//! Workbench for propositional computability logic CL2.

pub mod calculus;
pub mod classical;
pub mod completeness;
pub mod enumerate;
pub mod games;
pub mod lemmas;
pub mod strategy;
pub mod syntax;
