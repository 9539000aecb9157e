//! Randomized property suites for the game-semantic lemmas the soundness
//! argument rests on. Inputs are generated and shrunk with proptest, so a
//! failing suite reports a minimized counterexample.

pub mod gen;
pub mod oracle;
mod suites;

use std::fmt;
use std::str::FromStr;

use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Prefixation,
    Negation,
    Disjunction,
    Legality,
    ChoiceMove,
    DelayIllegality,
    CatchUp,
    Classification,
    Monotonicity,
    FinalizationNegation,
    FinalizationDisjunction,
    FinalizationChoice,
    ManageableWin,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::Prefixation,
        Suite::Negation,
        Suite::Disjunction,
        Suite::Legality,
        Suite::ChoiceMove,
        Suite::DelayIllegality,
        Suite::CatchUp,
        Suite::Classification,
        Suite::Monotonicity,
        Suite::FinalizationNegation,
        Suite::FinalizationDisjunction,
        Suite::FinalizationChoice,
        Suite::ManageableWin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Prefixation => "prefixation",
            Suite::Negation => "negation",
            Suite::Disjunction => "disjunction",
            Suite::Legality => "legality",
            Suite::ChoiceMove => "choice-move",
            Suite::DelayIllegality => "delay-illegality",
            Suite::CatchUp => "catch-up",
            Suite::Classification => "classification",
            Suite::Monotonicity => "monotonicity",
            Suite::FinalizationNegation => "finalization-negation",
            Suite::FinalizationDisjunction => "finalization-disjunction",
            Suite::FinalizationChoice => "finalization-choice",
            Suite::ManageableWin => "manageable-win",
        }
    }

    /// The property, in one line.
    pub fn statement(self) -> &'static str {
        match self {
            Suite::Prefixation => "⟨Φ,Ψ⟩A = ⟨Ψ⟩⟨Φ⟩A",
            Suite::Negation => "⟨Φ⟩¬A = ¬⟨¬Φ⟩A",
            Suite::Disjunction => "⟨Φ⟩(A1 ∨ … ∨ An) = ⟨Φ^1.⟩A1 ∨ … ∨ ⟨Φ^n.⟩An, likewise for ∧",
            Suite::Legality => "engine legality agrees with the compositional oracle on every candidate move",
            Suite::ChoiceMove => "⟨Ω,⊤γi⟩E* = ⟨Ω⟩H* and Ω stays H-manageable",
            Suite::DelayIllegality => "℘-delays preserve ℘-illegality backwards and ¬℘-illegality forwards",
            Suite::CatchUp => "the catch-up position after introducing a hybrid atom is H-manageable and legal",
            Suite::Classification => "every legal ⊥ move from a manageable position is an atom move, a mirrored hybrid move or a choice",
            Suite::Monotonicity => "raising a positive (lowering a negative) quasiatom never lowers an elementary formula",
            Suite::FinalizationNegation => "Wn ¬A⟨Γ⟩ is the flip of Wn A⟨¬Γ⟩",
            Suite::FinalizationDisjunction => "Wn of ∨/∧ is the ∨/∧ of the components' winners",
            Suite::FinalizationChoice => "empty ⊓ is won by ⊤, empty ⊔ by ⊥, and a choice hands over to the chosen component",
            Suite::ManageableWin => "every manageable legal run of a stable balanced hyperformula is won by ⊤",
        }
    }

    fn run(self, runner: &mut TestRunner) -> suites::Outcome {
        match self {
            Suite::Prefixation => suites::prefixation(runner),
            Suite::Negation => suites::negation(runner),
            Suite::Disjunction => suites::disjunction(runner),
            Suite::Legality => suites::legality(runner),
            Suite::ChoiceMove => suites::choice_move(runner),
            Suite::DelayIllegality => suites::delay_illegality(runner),
            Suite::CatchUp => suites::catch_up(runner),
            Suite::Classification => suites::classification(runner),
            Suite::Monotonicity => suites::monotonicity(runner),
            Suite::FinalizationNegation => suites::finalization_negation(runner),
            Suite::FinalizationDisjunction => suites::finalization_disjunction(runner),
            Suite::FinalizationChoice => suites::finalization_choice(runner),
            Suite::ManageableWin => suites::manageable_win(runner),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Suite, String> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
            format!("unknown suite `{s}` (known: {})", names.join(", "))
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: u32,
    pub seed: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// The shrunk failing input.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

fn runner(cases: u32, seed: u64) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        max_global_rejects: cases.saturating_mul(50).max(1024),
        ..Config::default()
    };
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
}

/// Runs `suite` on `cases` random inputs drawn from `seed`.
pub fn run_suite(suite: Suite, cases: u32, seed: u64) -> SuiteReport {
    let outcome = suite.run(&mut runner(cases.max(1), seed));
    let (reason, counterexample) = match outcome {
        Ok(()) => (None, None),
        Err((reason, value)) => (Some(reason), Some(value).filter(|v| !v.is_empty())),
    };
    SuiteReport { suite: suite.name().into(), cases, seed, passed: reason.is_none(), reason, counterexample }
}

pub fn run_all(cases: u32, seed: u64) -> Vec<SuiteReport> {
    Suite::ALL.iter().map(|&s| run_suite(s, cases, seed)).collect()
}
