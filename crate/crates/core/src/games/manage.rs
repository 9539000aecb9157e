use std::collections::BTreeMap;

use super::{GameError, LabeledMove, Player, Run};
use crate::syntax::{locate, surface_quasiatoms, Formula, Name, OccKind, Polarity, SpecPath};

/// `Γ^γ`: the moves made inside `γ`, with the prefix `γ` removed.
pub fn project(run: &[LabeledMove], spec: &SpecPath) -> Run {
    run.iter()
        .filter_map(|m| spec.strip_from(&m.mv).map(|rest| LabeledMove::new(m.player, rest)))
        .collect()
}

/// `Γ^{−γ}`: the run with every move made inside `γ` deleted.
pub fn project_out(run: &[LabeledMove], spec: &SpecPath) -> Run {
    run.iter().filter(|m| spec.strip_from(&m.mv).is_none()).cloned().collect()
}

/// `¬Γ`: every label flipped.
pub fn negate_run(run: &[LabeledMove]) -> Run {
    run.iter().map(|m| LabeledMove::new(m.player.flip(), m.mv.clone())).collect()
}

/// `Γ_F^γ`: `Γ^γ` if the quasiatom at `γ` is positive in `f`, `¬Γ^γ` if negative.
pub fn signed_project(run: &[LabeledMove], f: &Formula, spec: &SpecPath) -> Result<Run, GameError> {
    let (_, pol) = locate(f, spec).ok_or_else(|| GameError::NotQuasiatom(spec.to_string()))?;
    let p = project(run, spec);
    Ok(if pol.is_positive() { p } else { negate_run(&p) })
}

fn moves_of(run: &[LabeledMove], player: Player) -> Vec<&str> {
    run.iter().filter(|m| m.player == player).map(|m| m.mv.as_str()).collect()
}

/// For each move of `player`, how many opponent moves precede it.
fn opponent_counts(run: &[LabeledMove], player: Player) -> Vec<usize> {
    let mut seen = 0;
    let mut out = Vec::new();
    for m in run {
        if m.player == player {
            out.push(seen);
        } else {
            seen += 1;
        }
    }
    out
}

/// `Δ` is a `℘`-delay of `Γ`: both players' move sequences agree, and every
/// `℘` move of `Δ` comes after at least as many opponent moves as it does in `Γ`.
pub fn is_delay(player: Player, delta: &[LabeledMove], gamma: &[LabeledMove]) -> bool {
    if moves_of(delta, Player::Top) != moves_of(gamma, Player::Top)
        || moves_of(delta, Player::Bot) != moves_of(gamma, Player::Bot)
    {
        return false;
    }
    opponent_counts(delta, player).iter().zip(opponent_counts(gamma, player)).all(|(d, g)| g <= *d)
}

pub fn is_top_delay(delta: &[LabeledMove], gamma: &[LabeledMove]) -> bool {
    is_delay(Player::Top, delta, gamma)
}

/// Outcome of the manageability test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Manageability {
    Ok,
    /// The formula is not a balanced hyperformula.
    Unbalanced,
    /// A move does not enter a surface general or hybrid atom.
    Clause1 { index: usize },
    /// ⊤ moved inside a general atom.
    Clause2 { spec: SpecPath },
    /// The two occurrences of a hybrid atom are out of step.
    Clause3 { general: Name, elem: Name },
}

impl Manageability {
    pub fn is_ok(&self) -> bool {
        *self == Manageability::Ok
    }
}

/// Checks the three manageability clauses of `run` against balanced `f`.
pub fn is_manageable(run: &[LabeledMove], f: &Formula) -> Manageability {
    Manager::new(f).check(run)
}

/// The part of the manageability test that depends only on the formula,
/// for checking many runs against the same `f`.
#[derive(Debug, Clone)]
pub struct Manager {
    balanced: bool,
    /// Surface general and hybrid occurrences.
    occs: Vec<(SpecPath, Formula, Polarity)>,
    /// Hybrid atoms with the indices of their positive and negative occurrences.
    pairs: Vec<(Name, Name, usize, usize)>,
}

impl Manager {
    pub fn new(f: &Formula) -> Manager {
        let balanced = f.is_balanced();
        let occs: Vec<_> = surface_quasiatoms(f)
            .into_iter()
            .filter(|o| matches!(o.kind, OccKind::General | OccKind::Hybrid))
            .map(|o| (o.spec, o.subject, o.polarity))
            .collect();
        let mut hybrids: BTreeMap<(Name, Name), (Option<usize>, Option<usize>)> = BTreeMap::new();
        for (k, (_, subject, pol)) in occs.iter().enumerate() {
            if let Formula::Hybrid { general, elem } = subject {
                let slot = hybrids.entry((general.clone(), elem.clone())).or_default();
                match pol {
                    Polarity::Positive => slot.0 = Some(k),
                    Polarity::Negative => slot.1 = Some(k),
                }
            }
        }
        let pairs = if balanced {
            hybrids.into_iter().map(|((g, e), (pi, nu))| (g, e, pi.expect("balanced"), nu.expect("balanced"))).collect()
        } else {
            Vec::new()
        };
        Manager { balanced, occs, pairs }
    }

    pub fn check(&self, run: &[LabeledMove]) -> Manageability {
        if !self.balanced {
            return Manageability::Unbalanced;
        }
        // Surface occurrences are prefix-free, so each move enters at most one.
        let mut parts: Vec<Run> = vec![Vec::new(); self.occs.len()];
        for (index, m) in run.iter().enumerate() {
            let entered =
                self.occs.iter().enumerate().find_map(|(k, (spec, _, _))| spec.strip_from(&m.mv).map(|rest| (k, rest)));
            let Some((k, rest)) = entered else {
                return Manageability::Clause1 { index };
            };
            parts[k].push(LabeledMove::new(m.player, rest));
        }
        for (k, (spec, subject, _)) in self.occs.iter().enumerate() {
            if matches!(subject, Formula::General(_)) && parts[k].iter().any(|m| m.player.is_top()) {
                return Manageability::Clause2 { spec: spec.clone() };
            }
        }
        for (general, elem, pi, nu) in &self.pairs {
            if !is_top_delay(&parts[*pi], &negate_run(&parts[*nu])) {
                return Manageability::Clause3 { general: general.clone(), elem: elem.clone() };
            }
        }
        Manageability::Ok
    }
}
