//! Exhaustive and random formula generators for sweeps and property tests.

use rand::Rng;

use crate::syntax::Formula;

/// Connectives used to grow formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connective {
    Neg,
    And,
    Or,
    Implies,
    Chand,
    Chor,
}

impl Connective {
    pub const ALL: [Connective; 6] =
        [Connective::Neg, Connective::And, Connective::Or, Connective::Implies, Connective::Chand, Connective::Chor];

    fn build(self, a: &Formula, b: &Formula) -> Formula {
        let (a, b) = (a.clone(), b.clone());
        match self {
            Connective::Neg => unreachable!("unary"),
            Connective::And => Formula::and(vec![a, b]),
            Connective::Or => Formula::or(vec![a, b]),
            Connective::Implies => Formula::implies(a, b),
            Connective::Chand => Formula::chand(vec![a, b]),
            Connective::Chor => Formula::chor(vec![a, b]),
        }
    }
}

/// All formulas over `atoms` built from `¬` and binary connectives, grouped
/// by number of connective nodes.
pub struct Enumeration {
    atoms: Vec<Formula>,
    connectives: Vec<Connective>,
    levels: Vec<Vec<Formula>>,
}

impl Enumeration {
    pub fn new(atoms: Vec<Formula>, connectives: &[Connective]) -> Enumeration {
        Enumeration { levels: vec![atoms.clone()], atoms, connectives: connectives.to_vec() }
    }

    pub fn atoms(&self) -> &[Formula] {
        &self.atoms
    }

    fn for_each_at(&self, n: usize, f: &mut impl FnMut(Formula)) {
        if n == 0 {
            self.atoms.iter().cloned().for_each(f);
            return;
        }
        for &c in &self.connectives {
            if c == Connective::Neg {
                for a in &self.levels[n - 1] {
                    f(Formula::neg(a.clone()));
                }
                continue;
            }
            for left in 0..n {
                for a in &self.levels[left] {
                    for b in &self.levels[n - 1 - left] {
                        f(c.build(a, b));
                    }
                }
            }
        }
    }

    /// Visits every formula with exactly `n` connectives. Levels below `n`
    /// are materialized and kept; level `n` is streamed.
    pub fn for_each(&mut self, n: usize, mut f: impl FnMut(Formula)) {
        while self.levels.len() < n {
            let mut next = Vec::new();
            self.for_each_at(self.levels.len(), &mut |g| next.push(g));
            self.levels.push(next);
        }
        self.for_each_at(n, &mut f);
    }

    /// Number of formulas with exactly `n` connectives, without building them.
    pub fn count(&self, n: usize) -> u64 {
        let unary = self.connectives.contains(&Connective::Neg) as u64;
        let binary = self.connectives.len() as u64 - unary;
        let mut t = vec![self.atoms.len() as u64];
        for k in 1..=n {
            let pairs: u64 = (0..k).map(|i| t[i] * t[k - 1 - i]).sum();
            t.push(unary * t[k - 1] + binary * pairs);
        }
        t[n]
    }
}

/// A random formula with at most `max_connectives` connective nodes.
pub fn random_formula(rng: &mut impl Rng, atoms: &[Formula], max_connectives: usize) -> Formula {
    let budget = rng.gen_range(0..=max_connectives);
    grow(rng, atoms, budget)
}

fn grow(rng: &mut impl Rng, atoms: &[Formula], budget: usize) -> Formula {
    if budget == 0 {
        return atoms[rng.gen_range(0..atoms.len())].clone();
    }
    let c = Connective::ALL[rng.gen_range(0..Connective::ALL.len())];
    if c == Connective::Neg {
        return Formula::neg(grow(rng, atoms, budget - 1));
    }
    let arity = if matches!(c, Connective::Implies) { 2 } else { rng.gen_range(2..=3usize).min(budget + 1) };
    let mut rest = budget - 1;
    let mut children = Vec::with_capacity(arity);
    for i in 0..arity {
        let share = if i + 1 == arity { rest } else { rng.gen_range(0..=rest) };
        rest -= share;
        children.push(grow(rng, atoms, share));
    }
    match c {
        Connective::Implies => {
            let b = children.pop().expect("two children");
            Formula::implies(children.pop().expect("two children"), b)
        }
        Connective::And => Formula::and(children),
        Connective::Or => Formula::or(children),
        Connective::Chand => Formula::chand(children),
        Connective::Chor => Formula::chor(children),
        Connective::Neg => unreachable!(),
    }
}
