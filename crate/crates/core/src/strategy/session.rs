use std::sync::Arc;

use serde::Serialize;

use super::StrategyError;
use crate::calculus::{check_proof, premises_a_detailed, ProofNode, Rule, System};
use crate::games::{
    interpret, project, Manager, show_run, Game, GameError, GameTerm, Interpretation, LabeledMove, Player, Run,
};
use crate::syntax::{parse_choice, replace_at, split_move, surface_quasiatoms, Formula, Polarity, SpecPath};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    /// The machine walks down rule (b) and rule (c°) nodes.
    MainLoop,
    /// At a rule (a) node, waiting for the adversary to move or stop.
    InnerWait,
    Finished,
}

/// How the machine classified an adversary move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveOutcome {
    /// Inside a general atom: recorded, no reply.
    General,
    /// Inside a hybrid atom: the machine copies the move to the twin occurrence.
    Mirrored { reply: String },
    /// A choice at an environment-owned choice node; the cursor moves to the premise.
    Choice,
    /// Illegal move: the adversary loses.
    Forfeit { reason: String },
}

/// A live run of the strategy extracted from a CL2° proof.
///
/// `E` is the current proof node's hyperformula, `Ω` the record of moves
/// made inside atoms, `Θ` the full history. After every transition,
/// `Ω` is `E`-manageable and `⟨Θ⟩F* = ⟨Ω⟩E*`; failures of either are
/// collected in [`Session::violations`].
#[derive(Debug, Clone)]
pub struct Session {
    proof: Arc<ProofNode>,
    cursor: Vec<usize>,
    omega: Run,
    theta: Run,
    interp: Arc<Interpretation>,
    g0: Game,
    current: Game,
    /// `⟨Ω⟩E*`, kept in step with `Ω` and rebuilt whenever `E` changes.
    e_game: Result<Game, GameError>,
    /// Manageability test for the current `E`.
    manager: Arc<Manager>,
    phase: Phase,
    result: Option<Player>,
    violations: Vec<String>,
    tampered: bool,
    /// Every move of `Θ` was legal, so `current` is `⟨Θ⟩F*`.
    clean: bool,
}

/// Serializable snapshot used by the play service.
#[derive(Debug, Clone, Serialize)]
pub struct SessionState {
    pub formula: String,
    pub current: String,
    pub residual_game: GameTerm,
    pub run: Run,
    pub legal_moves: Vec<String>,
    pub phase: Phase,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub winner: Option<Player>,
}

impl Session {
    pub fn new(proof: Arc<ProofNode>, interp: Arc<Interpretation>) -> Result<Session, StrategyError> {
        check_proof(&proof, System::Cl2Circ).map_err(StrategyError::BadProof)?;
        if !interp.covers(&proof.conclusion) {
            return Err(StrategyError::Uncovered(proof.conclusion.clone()));
        }
        let g0 = interpret(&proof.conclusion, &interp)?;
        Ok(Session {
            cursor: Vec::new(),
            omega: Vec::new(),
            theta: Vec::new(),
            interp,
            current: g0.clone(),
            e_game: Ok(g0.clone()),
            manager: Arc::new(Manager::new(&proof.conclusion)),
            proof,
            g0,
            phase: Phase::MainLoop,
            result: None,
            violations: Vec::new(),
            tampered: false,
            clean: true,
        })
    }

    fn node(&self) -> &ProofNode {
        self.proof.at(&self.cursor).expect("cursor inside proof")
    }

    /// The current proof hyperformula `E`.
    pub fn e(&self) -> &Formula {
        &self.node().conclusion
    }

    pub fn root(&self) -> &Formula {
        &self.proof.conclusion
    }

    pub fn omega(&self) -> &Run {
        &self.omega
    }

    pub fn theta(&self) -> &Run {
        &self.theta
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn result(&self) -> Option<Player> {
        self.result
    }

    pub fn violations(&self) -> &[String] {
        &self.violations
    }

    pub fn interpretation(&self) -> &Interpretation {
        &self.interp
    }

    /// `⟨Θ⟩F*`: the game still to be played.
    pub fn residual(&self) -> &Game {
        &self.current
    }

    /// Moves the adversary may legally make now.
    pub fn adversary_moves(&self) -> Vec<String> {
        if self.phase != Phase::InnerWait {
            return Vec::new();
        }
        self.current.legal_moves().into_iter().filter(|m| m.player == Player::Bot).map(|m| m.mv).collect()
    }

    pub fn state(&self) -> SessionState {
        SessionState {
            formula: self.root().to_string(),
            current: self.e().to_string(),
            residual_game: self.current.to_term(),
            run: self.theta.clone(),
            legal_moves: self.adversary_moves(),
            phase: self.phase,
            winner: self.result,
        }
    }

    fn record(&mut self, m: LabeledMove, into_omega: bool) {
        match self.current.apply(m.player, &m.mv) {
            Ok(g) => self.advance(m, g, into_omega),
            Err(reason) => {
                if m.player.is_top() {
                    self.violations.push(format!("machine move {m} is illegal: {reason}"));
                }
                self.clean = false;
                self.log(m, into_omega);
            }
        }
    }

    /// Records `m`, already known to turn the current game into `next`.
    fn advance(&mut self, m: LabeledMove, next: Game, into_omega: bool) {
        self.current = next;
        self.log(m, into_omega);
    }

    fn log(&mut self, m: LabeledMove, into_omega: bool) {
        if into_omega {
            if let Ok(g) = &self.e_game {
                let index = self.omega.len();
                self.e_game = g.apply(m.player, &m.mv).map_err(|reason| GameError::IllegalMove {
                    index,
                    player: m.player,
                    mv: m.mv.clone(),
                    reason,
                });
            }
            self.omega.push(m.clone());
        }
        self.theta.push(m);
    }

    fn rebuild_e_game(&mut self) {
        self.manager = Arc::new(Manager::new(self.e()));
        self.e_game = interpret(self.e(), &self.interp).and_then(|g| g.prefix(&self.omega));
    }

    fn check_invariant(&mut self) {
        let e = self.e().clone();
        let verdict = self.manager.check(&self.omega);
        if !verdict.is_ok() {
            self.violations.push(format!("Ω = {} is not manageable in `{e}`: {verdict:?}", show_run(&self.omega)));
        }
        match &self.e_game {
            Ok(b) if *b == self.current && !self.tampered => {}
            b => {
                let a = self.g0.prefix(&self.theta);
                if a.as_ref().ok() != b.as_ref().ok() || a.is_err() {
                    self.violations.push(format!(
                        "⟨Θ⟩F* ≠ ⟨Ω⟩E* at `{e}` (Θ = {}, Ω = {}): {a:?} vs {b:?}",
                        show_run(&self.theta),
                        show_run(&self.omega)
                    ));
                }
            }
        }
    }

    /// Runs the main loop until the strategy waits for the adversary.
    /// Returns the machine's moves in order.
    pub fn machine_flush(&mut self) -> Result<Vec<String>, StrategyError> {
        match self.phase {
            Phase::InnerWait => return Err(StrategyError::AwaitingAdversary),
            Phase::Finished => return Err(StrategyError::Finished),
            Phase::MainLoop => {}
        }
        let mut emitted = Vec::new();
        loop {
            let (rule, premise) = {
                let n = self.node();
                (n.rule.clone(), n.children.first().map(|c| c.conclusion.clone()))
            };
            match &rule {
                Rule::A => {
                    self.phase = Phase::InnerWait;
                    break;
                }
                Rule::B { spec, index } => {
                    let mv = spec.choice_move(*index);
                    self.record(LabeledMove::top(mv.clone()), false);
                    emitted.push(mv);
                }
                Rule::CCirc { general, elem } => {
                    let h = premise.as_ref().expect("rule (c°) has a premise");
                    let hybrid = Formula::Hybrid { general: general.clone(), elem: elem.clone() };
                    let (pi, nu) = hybrid_specs(h, &hybrid);
                    let omega_pi = project(&self.omega, &pi);
                    let omega_nu = project(&self.omega, &nu);
                    let catch_up: Vec<String> = omega_nu
                        .iter()
                        .map(|m| pi.prefix_move(&m.mv))
                        .chain(omega_pi.iter().map(|m| nu.prefix_move(&m.mv)))
                        .collect();
                    for mv in catch_up {
                        self.record(LabeledMove::top(mv.clone()), true);
                        emitted.push(mv);
                    }
                }
                Rule::C { .. } => unreachable!("rejected by the CL2° check"),
            }
            self.cursor.push(0);
        }
        self.rebuild_e_game();
        self.check_invariant();
        Ok(emitted)
    }

    /// Feeds one adversary move. After a [`MoveOutcome::Choice`] the caller
    /// must run [`Session::machine_flush`].
    pub fn adversary_move(&mut self, mv: &str) -> Result<MoveOutcome, StrategyError> {
        match self.phase {
            Phase::MainLoop => return Err(StrategyError::MachineToMove),
            Phase::Finished => return Err(StrategyError::Finished),
            Phase::InnerWait => {}
        }
        let labeled = LabeledMove::bot(mv);
        let after = match self.current.apply(Player::Bot, mv) {
            Ok(g) => g,
            Err(reason) => {
                self.theta.push(labeled);
                return Ok(self.forfeit(reason));
            }
        };
        let e = self.e().clone();
        let Some((gamma, pol, node, beta)) = split_move(&e, mv) else {
            self.theta.push(labeled);
            return Ok(self.forfeit("move outside every quasiatom".into()));
        };
        match node {
            Formula::General(_) => {
                self.advance(labeled, after, true);
                self.check_invariant();
                Ok(MoveOutcome::General)
            }
            Formula::Hybrid { .. } => {
                let (pi, nu) = hybrid_specs(&e, node);
                let sigma = if gamma == pi { nu } else { pi };
                let reply = sigma.prefix_move(beta);
                self.advance(labeled, after, true);
                self.record(LabeledMove::top(reply.clone()), true);
                self.check_invariant();
                Ok(MoveOutcome::Mirrored { reply })
            }
            Formula::Chand(_) | Formula::Chor(_) => {
                let env_owned = matches!(
                    (node, pol),
                    (Formula::Chand(_), Polarity::Positive) | (Formula::Chor(_), Polarity::Negative)
                );
                let index = parse_choice(beta).filter(|&i| i <= node.children().len());
                let Some(i) = index.filter(|_| env_owned) else {
                    self.theta.push(labeled);
                    return Ok(self.forfeit("not a move of the environment".into()));
                };
                self.advance(labeled, after, false);
                let h = replace_at(&e, &gamma, node.children()[i - 1]).expect("surface quasiatom");
                let children = &self.node().children;
                let canonical = premises_a_detailed(&e).iter().position(|(_, s, k)| *s == gamma && *k == i);
                let slot = canonical
                    .filter(|&k| children.get(k).is_some_and(|c| c.conclusion == h))
                    .or_else(|| children.iter().position(|c| c.conclusion == h));
                match slot {
                    Some(k) => {
                        self.cursor.push(k);
                        self.rebuild_e_game();
                        self.phase = Phase::MainLoop;
                        self.check_invariant();
                        Ok(MoveOutcome::Choice)
                    }
                    None => {
                        self.violations.push(format!("no premise `{h}` under `{e}`"));
                        Ok(self.forfeit("proof has no matching premise".into()))
                    }
                }
            }
            _ => {
                self.theta.push(labeled);
                Ok(self.forfeit("no moves in an elementary atom".into()))
            }
        }
    }

    fn forfeit(&mut self, reason: String) -> MoveOutcome {
        self.phase = Phase::Finished;
        self.result = Some(self.g0.winner(&self.theta));
        MoveOutcome::Forfeit { reason }
    }

    /// The adversary stops; the run is adjudicated.
    pub fn adversary_stop(&mut self) -> Result<Player, StrategyError> {
        match self.phase {
            Phase::MainLoop => return Err(StrategyError::MachineToMove),
            Phase::Finished => return Err(StrategyError::Finished),
            Phase::InnerWait => {}
        }
        self.phase = Phase::Finished;
        let w = if self.clean && !self.tampered { self.current.value() } else { self.g0.winner(&self.theta) };
        self.result = Some(w);
        if w != Player::Top && !self.tampered && self.violations.is_empty() {
            self.violations.push(format!("⊥ won {} without any invariant failing", show_run(&self.theta)));
        }
        Ok(w)
    }

    /// Test hook: overwrite the history `Θ` behind the strategy's back.
    #[doc(hidden)]
    pub fn tamper_history(&mut self, theta: Run) {
        self.current = self.g0.prefix(&theta).unwrap_or_else(|_| self.current.clone());
        self.theta = theta;
        self.tampered = true;
    }
}

/// Specs of the positive and negative occurrences of `hybrid` in balanced `f`.
fn hybrid_specs(f: &Formula, hybrid: &Formula) -> (SpecPath, SpecPath) {
    let mut pos = None;
    let mut neg = None;
    for o in surface_quasiatoms(f) {
        if o.subject == *hybrid {
            match o.polarity {
                Polarity::Positive => pos = Some(o.spec),
                Polarity::Negative => neg = Some(o.spec),
            }
        }
    }
    (pos.expect("positive occurrence"), neg.expect("negative occurrence"))
}
