use rustc_hash::FxHashMap as HashMap;
use std::time::{Duration, Instant};

use super::premises::{premises_a, premises_b, premises_c, premises_c_in, resolutions_in};
use super::{CalcError, ProofNode, Rule, System};
use crate::classical::is_stable;
use crate::syntax::{surface_quasiatoms, Formula};

/// How a provable formula was (first) derived. Indices point into the
/// premise lists, which depend only on the formula's shape and so transfer
/// between a formula and its canonical renaming.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    A,
    B(usize),
    C(usize),
}

/// Limits on a single search.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    pub max_nodes: Option<usize>,
    pub time: Option<Duration>,
}

/// Memoized exhaustive proof search.
///
/// Rules are tried in the order (b), (c), (a); memo keys are canonical
/// alpha-renamings, so renaming-equivalent subgoals are solved once.
pub struct Decider {
    system: System,
    memo: HashMap<Formula, Option<Witness>>,
    budget: Budget,
    deadline: Option<Instant>,
    visits: usize,
    memo_cap: Option<usize>,
}

impl Decider {
    pub fn new(system: System) -> Decider {
        Decider { system, memo: HashMap::default(), budget: Budget::default(), deadline: None, visits: 0, memo_cap: None }
    }

    pub fn with_budget(system: System, budget: Budget) -> Decider {
        Decider { budget, ..Decider::new(system) }
    }

    /// Bounds memory for long sweeps: the memo table is dropped before a
    /// top-level call once it holds more than `cap` entries.
    pub fn with_memo_cap(mut self, cap: usize) -> Decider {
        self.memo_cap = Some(cap);
        self
    }

    /// Distinct (canonical) formulas explored so far.
    pub fn explored(&self) -> usize {
        self.memo.len()
    }

    fn validate(&self, f: &Formula) -> Result<(), CalcError> {
        match self.system {
            System::Cl1 if !f.is_elementary_base() => Err(CalcError::NotElementaryBase(f.clone())),
            System::Cl2Circ => Err(CalcError::UnsupportedSystem(self.system)),
            _ if !f.is_cl2_formula() => Err(CalcError::HybridInput(f.clone())),
            _ => Ok(()),
        }
    }

    pub fn decide(&mut self, f: &Formula) -> Result<bool, CalcError> {
        self.validate(f)?;
        if self.memo_cap.is_some_and(|cap| self.memo.len() > cap) {
            self.memo.clear();
        }
        self.deadline = self.budget.time.map(|t| Instant::now() + t);
        Ok(self.solve(&f.canonical())?.is_some())
    }

    /// Like [`Decider::decide`] but without recording `f` itself; only its
    /// subgoals are memoized. Suited to sweeps over many distinct formulas.
    pub fn decide_once(&mut self, f: &Formula) -> Result<bool, CalcError> {
        self.validate(f)?;
        if self.memo_cap.is_some_and(|cap| self.memo.len() > cap) {
            self.memo.clear();
        }
        self.deadline = self.budget.time.map(|t| Instant::now() + t);
        Ok(self.search(f)?.is_some())
    }

    pub fn prove(&mut self, f: &Formula) -> Result<Option<ProofNode>, CalcError> {
        if !self.decide(f)? {
            return Ok(None);
        }
        Ok(Some(self.build(f)))
    }

    fn solve(&mut self, f: &Formula) -> Result<Option<Witness>, CalcError> {
        if let Some(w) = self.memo.get(f) {
            return Ok(*w);
        }
        self.visits += 1;
        let over_nodes = self.budget.max_nodes.is_some_and(|max| self.visits > max);
        let over_time = self.deadline.is_some_and(|d| self.visits.is_multiple_of(256) && Instant::now() > d);
        if over_nodes || over_time {
            return Err(CalcError::BudgetExceeded { explored: self.visits });
        }
        let w = self.search(f)?;
        self.memo.insert(f.clone(), w);
        Ok(w)
    }

    fn search(&mut self, f: &Formula) -> Result<Option<Witness>, CalcError> {
        let occs = surface_quasiatoms(f);
        for (i, (b, _, _)) in resolutions_in(f, &occs, false).enumerate() {
            if self.solve(&b.canonical())?.is_some() {
                return Ok(Some(Witness::B(i)));
            }
        }
        if self.system == System::Cl2 {
            for (i, c) in premises_c_in(f, &occs).into_iter().enumerate() {
                if self.solve(&c.formula.canonical())?.is_some() {
                    return Ok(Some(Witness::C(i)));
                }
            }
        }
        if !is_stable(f) {
            return Ok(None);
        }
        let mut premises: Vec<Formula> = resolutions_in(f, &occs, true).map(|(g, _, _)| g.canonical()).collect();
        premises.sort_unstable();
        premises.dedup();
        for g in &premises {
            if self.solve(g)?.is_none() {
                return Ok(None);
            }
        }
        Ok(Some(Witness::A))
    }

    /// Reconstructs a proof of `f`, which must already be known provable.
    fn build(&mut self, f: &Formula) -> ProofNode {
        let w = self.memo[&f.canonical()].expect("provable");
        match w {
            Witness::B(i) => {
                let b = premises_b(f).swap_remove(i);
                let child = self.build(&b.formula);
                ProofNode { conclusion: f.clone(), rule: Rule::B { spec: b.spec, index: b.index }, children: vec![child] }
            }
            Witness::C(i) => {
                let c = premises_c(f).swap_remove(i);
                let child = self.build(&c.formula);
                ProofNode {
                    conclusion: f.clone(),
                    rule: Rule::C { pos_spec: c.pos_spec, neg_spec: c.neg_spec, general: c.general, fresh: c.fresh },
                    children: vec![child],
                }
            }
            Witness::A => {
                let children = premises_a(f).iter().map(|g| self.build(g)).collect();
                ProofNode { conclusion: f.clone(), rule: Rule::A, children }
            }
        }
    }

    /// The memo table: every canonical subgoal met so far with its verdict.
    pub fn trace(&self) -> Vec<(Formula, Option<Witness>)> {
        let mut rows: Vec<_> = self.memo.iter().map(|(f, w)| (f.clone(), *w)).collect();
        rows.sort_by(|a, b| a.0.size().cmp(&b.0.size()).then_with(|| a.0.cmp(&b.0)));
        rows
    }
}

/// Decides provability in CL1 or CL2.
pub fn decide(f: &Formula, system: System) -> Result<bool, CalcError> {
    Decider::new(system).decide(f)
}

/// A proof of `f`, or `None` if `f` is unprovable.
pub fn prove(f: &Formula, system: System) -> Result<Option<ProofNode>, CalcError> {
    Decider::new(system).prove(f)
}
