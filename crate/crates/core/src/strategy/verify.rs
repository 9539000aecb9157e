use std::sync::Arc;

use serde::Serialize;

use super::{MoveOutcome, Phase, Session, StrategyError};
use crate::calculus::{hybridize, prove, ProofNode, System};
use crate::games::{show_run, Interpretation, Player};
use crate::syntax::Formula;

/// The CL2° proof whose strategy is played for `f`.
pub fn strategy_for(f: &Formula) -> Result<Arc<ProofNode>, StrategyError> {
    let proof = prove(f, System::Cl2)?.ok_or_else(|| StrategyError::Unprovable(f.clone()))?;
    Ok(Arc::new(hybridize(&proof)?))
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub interpretation: String,
    pub run: String,
    pub message: String,
}

/// Outcome of exhaustive verification.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub formula: String,
    pub interpretations: usize,
    /// Complete plays explored (one per adversary stop or forfeit).
    pub branches: usize,
    pub top_wins: usize,
    pub bot_wins: usize,
    /// Longest run seen.
    pub max_run: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.bot_wins == 0 && self.violations.is_empty() && self.branches > 0
    }

    pub fn merge(&mut self, other: Report) {
        self.interpretations += other.interpretations;
        self.branches += other.branches;
        self.top_wins += other.top_wins;
        self.bot_wins += other.bot_wins;
        self.max_run = self.max_run.max(other.max_run);
        self.violations.extend(other.violations);
    }
}

fn explore(s: Session, label: &str, report: &mut Report) {
    debug_assert_eq!(s.phase(), Phase::InnerWait);
    let mut stopped = s.clone();
    let winner = stopped.adversary_stop().expect("waiting session");
    tally(&stopped, winner, label, report);
    for mv in s.adversary_moves() {
        let mut next = s.clone();
        match next.adversary_move(&mv).expect("waiting session") {
            MoveOutcome::Forfeit { reason } => {
                report.violations.push(Violation {
                    interpretation: label.to_string(),
                    run: show_run(next.theta()),
                    message: format!("legal move {mv} was rejected: {reason}"),
                });
                continue;
            }
            MoveOutcome::Choice => {
                next.machine_flush().expect("main loop");
            }
            MoveOutcome::General | MoveOutcome::Mirrored { .. } => {}
        }
        if !next.violations().is_empty() {
            tally(&next, Player::Bot, label, report);
            continue;
        }
        explore(next, label, report);
    }
}

fn tally(s: &Session, winner: Player, label: &str, report: &mut Report) {
    report.branches += 1;
    report.max_run = report.max_run.max(s.theta().len());
    match winner {
        Player::Top => report.top_wins += 1,
        Player::Bot => report.bot_wins += 1,
    }
    for v in s.violations() {
        report.violations.push(Violation {
            interpretation: label.to_string(),
            run: show_run(s.theta()),
            message: v.clone(),
        });
    }
}

/// Plays the strategy for `f` against every adversary behaviour under each
/// interpretation: at every waiting point, every legal environment move and
/// stopping are all explored.
pub fn verify_all(f: &Formula, family: &[(String, Interpretation)]) -> Result<Report, StrategyError> {
    let proof = strategy_for(f)?;
    let mut report = Report { formula: f.to_string(), ..Report::default() };
    for (label, interp) in family {
        report.merge(verify_one(&proof, label, interp)?);
    }
    Ok(report)
}

fn verify_one(proof: &Arc<ProofNode>, label: &str, interp: &Interpretation) -> Result<Report, StrategyError> {
    let mut report = Report { interpretations: 1, ..Report::default() };
    let mut s = Session::new(proof.clone(), Arc::new(interp.clone()))?;
    s.machine_flush()?;
    if s.violations().is_empty() {
        explore(s, label, &mut report);
    } else {
        tally(&s, Player::Bot, label, &mut report);
    }
    Ok(report)
}
