use std::collections::{BTreeSet, HashMap};

use smallvec::{smallvec, SmallVec};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Polarity;

/// Atom name. Cheap to clone.
pub type Name = Arc<str>;

/// Formula or hyperformula over elementary, general and hybrid atoms.
///
/// `And`, `Or`, `Chand` (⊓) and `Chor` (⊔) always carry at least two children.
/// `Implies` is kept as written; every semantic computation reads `G → H`
/// as `¬G ∨ H`, so the antecedent is child 1 and the consequent child 2.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Elem(Name),
    General(Name),
    Hybrid { general: Name, elem: Name },
    Top,
    Bot,
    Neg(Arc<Formula>),
    And(Arc<[Formula]>),
    Or(Arc<[Formula]>),
    Implies(Arc<Formula>, Arc<Formula>),
    Chand(Arc<[Formula]>),
    Chor(Arc<[Formula]>),
}

thread_local! {
    static CANONICAL_NAMES: std::cell::RefCell<[Vec<Name>; 2]> = const { std::cell::RefCell::new([Vec::new(), Vec::new()]) };
}

/// `a{k+1}` or `A{k+1}`, shared so that canonical formulas reuse allocations.
fn canonical_name(prefix: char, k: usize) -> Name {
    CANONICAL_NAMES.with(|cell| {
        let mut tables = cell.borrow_mut();
        let table = &mut tables[(prefix == 'A') as usize];
        while table.len() <= k {
            let next = format!("{prefix}{}", table.len() + 1);
            table.push(next.into());
        }
        table[k].clone()
    })
}

impl Formula {
    pub fn elem(name: &str) -> Formula {
        Formula::Elem(name.into())
    }

    pub fn general(name: &str) -> Formula {
        Formula::General(name.into())
    }

    pub fn hybrid(general: &str, elem: &str) -> Formula {
        Formula::Hybrid { general: general.into(), elem: elem.into() }
    }

    pub fn neg(f: Formula) -> Formula {
        Formula::Neg(Arc::new(f))
    }

    pub fn and(children: Vec<Formula>) -> Formula {
        debug_assert!(children.len() >= 2);
        Formula::And(children.into())
    }

    pub fn or(children: Vec<Formula>) -> Formula {
        debug_assert!(children.len() >= 2);
        Formula::Or(children.into())
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Arc::new(a), Arc::new(b))
    }

    pub fn chand(children: Vec<Formula>) -> Formula {
        debug_assert!(children.len() >= 2);
        Formula::Chand(children.into())
    }

    pub fn chor(children: Vec<Formula>) -> Formula {
        debug_assert!(children.len() >= 2);
        Formula::Chor(children.into())
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Elem(_) | Formula::General(_) | Formula::Hybrid { .. })
    }

    pub fn is_choice(&self) -> bool {
        matches!(self, Formula::Chand(_) | Formula::Chor(_))
    }

    /// Atom or choice node: the endpoints of spec addressing.
    pub fn is_quasiatom(&self) -> bool {
        self.is_atom() || self.is_choice()
    }

    /// Immediate subformulas, in order.
    pub fn children(&self) -> SmallVec<[&Formula; 4]> {
        match self {
            Formula::Neg(a) => smallvec![&**a],
            Formula::Implies(a, b) => smallvec![&**a, &**b],
            Formula::And(cs) | Formula::Or(cs) | Formula::Chand(cs) | Formula::Chor(cs) => {
                cs.iter().collect()
            }
            _ => SmallVec::new(),
        }
    }

    fn for_each_child<'a>(&'a self, mut f: impl FnMut(&'a Formula)) {
        match self {
            Formula::Neg(a) => f(a),
            Formula::Implies(a, b) => {
                f(a);
                f(b);
            }
            Formula::And(cs) | Formula::Or(cs) | Formula::Chand(cs) | Formula::Chor(cs) => cs.iter().for_each(f),
            _ => {}
        }
    }

    /// Rebuilds a node of the same kind over new children.
    pub fn with_children(&self, children: Vec<Formula>) -> Formula {
        let mut it = children.into_iter();
        match self {
            Formula::Neg(_) => Formula::neg(it.next().expect("neg child")),
            Formula::Implies(_, _) => {
                let a = it.next().expect("antecedent");
                let b = it.next().expect("consequent");
                Formula::implies(a, b)
            }
            Formula::And(_) => Formula::And(it.collect()),
            Formula::Or(_) => Formula::Or(it.collect()),
            Formula::Chand(_) => Formula::Chand(it.collect()),
            Formula::Chor(_) => Formula::Chor(it.collect()),
            leaf => leaf.clone(),
        }
    }

    /// Applies `f` bottom-up to every node.
    pub fn map_bottom_up(&self, f: &mut impl FnMut(Formula) -> Formula) -> Formula {
        let rebuilt = if self.is_atom() || matches!(self, Formula::Top | Formula::Bot) {
            self.clone()
        } else {
            let kids = self.children().into_iter().map(|c| c.map_bottom_up(f)).collect();
            self.with_children(kids)
        };
        f(rebuilt)
    }

    /// Pre-order, left-to-right visit of every node.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        self.for_each_child(|c| c.visit(f));
    }

    /// Visits every atom occurrence with its polarity and whether it is at the surface.
    pub fn visit_atoms<'a>(&'a self, f: &mut impl FnMut(&'a Formula, Polarity, bool)) {
        fn go<'a>(
            node: &'a Formula,
            pol: Polarity,
            surface: bool,
            f: &mut impl FnMut(&'a Formula, Polarity, bool),
        ) {
            match node {
                Formula::Elem(_) | Formula::General(_) | Formula::Hybrid { .. } => f(node, pol, surface),
                Formula::Top | Formula::Bot => {}
                Formula::Neg(a) => go(a, pol.flip(), surface, f),
                Formula::Implies(a, b) => {
                    go(a, pol.flip(), surface, f);
                    go(b, pol, surface, f);
                }
                Formula::And(cs) | Formula::Or(cs) => cs.iter().for_each(|c| go(c, pol, surface, f)),
                Formula::Chand(cs) | Formula::Chor(cs) => cs.iter().for_each(|c| go(c, pol, false, f)),
            }
        }
        go(self, Polarity::Positive, true, f)
    }

    /// No hybrid atoms.
    pub fn is_cl2_formula(&self) -> bool {
        !self.any(&mut |n| matches!(n, Formula::Hybrid { .. }))
    }

    /// No general or hybrid atoms (a CL1 formula).
    pub fn is_elementary_base(&self) -> bool {
        !self.any(&mut |n| matches!(n, Formula::General(_) | Formula::Hybrid { .. }))
    }

    /// Elementary-base and free of choice connectives: a classical formula.
    pub fn is_elementary(&self) -> bool {
        !self.any(&mut |n| {
            matches!(n, Formula::General(_) | Formula::Hybrid { .. } | Formula::Chand(_) | Formula::Chor(_))
        })
    }

    pub fn any(&self, pred: &mut impl FnMut(&Formula) -> bool) -> bool {
        if pred(self) {
            return true;
        }
        match self {
            Formula::Neg(a) => a.any(pred),
            Formula::Implies(a, b) => a.any(pred) || b.any(pred),
            Formula::And(cs) | Formula::Or(cs) | Formula::Chand(cs) | Formula::Chor(cs) => cs.iter().any(|c| c.any(pred)),
            _ => false,
        }
    }

    /// Names used as elementary atoms, including elementary components of hybrid atoms.
    pub fn elementary_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.visit(&mut |n| match n {
            Formula::Elem(p) => {
                out.insert(p.clone());
            }
            Formula::Hybrid { elem, .. } => {
                out.insert(elem.clone());
            }
            _ => {}
        });
        out
    }

    /// Names of general atoms, including general components of hybrid atoms.
    pub fn general_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.visit(&mut |n| match n {
            Formula::General(p) | Formula::Hybrid { general: p, .. } => {
                out.insert(p.clone());
            }
            _ => {}
        });
        out
    }

    /// Elementary atom names occurring as `Elem` nodes only.
    pub fn elem_atoms(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.visit(&mut |n| {
            if let Formula::Elem(p) = n {
                out.insert(p.clone());
            }
        });
        out
    }

    pub fn count_general_occurrences(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |x| {
            if matches!(x, Formula::General(_)) {
                n += 1
            }
        });
        n
    }

    pub fn count_choice_nodes(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |x| {
            if x.is_choice() {
                n += 1
            }
        });
        n
    }

    /// Number of connective nodes (everything except atoms and constants).
    pub fn connective_count(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |x| {
            if !x.is_atom() && !matches!(x, Formula::Top | Formula::Bot) {
                n += 1
            }
        });
        n
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    /// Replaces every hybrid atom `P_q` by its general component `P`.
    pub fn dehybridize(&self) -> Formula {
        if self.is_cl2_formula() {
            return self.clone();
        }
        self.map_bottom_up(&mut |n| match n {
            Formula::Hybrid { general, .. } => Formula::General(general),
            other => other,
        })
    }

    /// Replaces every elementary atom `from` by `to` (hybrid components untouched).
    pub fn substitute_elem(&self, from: &str, to: &Formula) -> Formula {
        self.map_bottom_up(&mut |n| match n {
            Formula::Elem(ref p) if &**p == from => to.clone(),
            other => other,
        })
    }

    /// First name `h1`, `h2`, … not used as an elementary atom or hybrid component.
    pub fn fresh_elem_name(&self) -> Name {
        let used = self.elementary_names();
        (1..)
            .map(|i| format!("h{i}"))
            .find(|n| !used.contains(n.as_str()))
            .expect("unbounded")
            .into()
    }

    /// Injective renaming of atoms, per sort, in first-occurrence order.
    ///
    /// Elementary names (including hybrid components) become `a1, a2, …`,
    /// general names (including hybrid components) become `A1, A2, …`.
    pub fn canonical(&self) -> Formula {
        let mut elem: Vec<&Name> = Vec::new();
        let mut gen: Vec<&Name> = Vec::new();
        fn note<'a>(seen: &mut Vec<&'a Name>, n: &'a Name) {
            if !seen.contains(&n) {
                seen.push(n);
            }
        }
        self.visit(&mut |f| {
            match f {
                Formula::Elem(p) => note(&mut elem, p),
                Formula::General(p) => note(&mut gen, p),
                Formula::Hybrid { general, elem: e } => {
                    note(&mut gen, general);
                    note(&mut elem, e);
                }
                _ => {}
            }
        });
        let elem: Vec<(&Name, Name)> = elem.into_iter().enumerate().map(|(k, n)| (n, canonical_name('a', k))).collect();
        let gen: Vec<(&Name, Name)> = gen.into_iter().enumerate().map(|(k, n)| (n, canonical_name('A', k))).collect();
        if elem.iter().chain(&gen).all(|(from, to)| *from == to) {
            return self.clone();
        }
        fn look(table: &[(&Name, Name)], n: &Name) -> Name {
            table.iter().find(|(from, _)| *from == n).expect("collected").1.clone()
        }
        fn go(f: &Formula, elem: &[(&Name, Name)], gen: &[(&Name, Name)]) -> Formula {
            match f {
                Formula::Elem(p) => Formula::Elem(look(elem, p)),
                Formula::General(p) => Formula::General(look(gen, p)),
                Formula::Hybrid { general, elem: e } => Formula::Hybrid { general: look(gen, general), elem: look(elem, e) },
                Formula::Top | Formula::Bot => f.clone(),
                Formula::Neg(a) => Formula::neg(go(a, elem, gen)),
                Formula::Implies(a, b) => Formula::implies(go(a, elem, gen), go(b, elem, gen)),
                Formula::And(cs) => Formula::And(cs.iter().map(|c| go(c, elem, gen)).collect()),
                Formula::Or(cs) => Formula::Or(cs.iter().map(|c| go(c, elem, gen)).collect()),
                Formula::Chand(cs) => Formula::Chand(cs.iter().map(|c| go(c, elem, gen)).collect()),
                Formula::Chor(cs) => Formula::Chor(cs.iter().map(|c| go(c, elem, gen)).collect()),
            }
        }
        go(self, &elem, &gen)
    }

    /// Balanced hyperformula test.
    ///
    /// Every hybrid atom `P_q` occurs exactly twice, once positively and once
    /// negatively, both at the surface; `q` occurs nowhere else, neither as
    /// an elementary atom nor as the component of a different hybrid atom.
    pub fn is_balanced(&self) -> bool {
        let mut hybrids: HashMap<(Name, Name), Vec<(Polarity, bool)>> = HashMap::new();
        let mut elems: BTreeSet<Name> = BTreeSet::new();
        self.visit_atoms(&mut |a, pol, surface| match a {
            Formula::Hybrid { general, elem } => hybrids
                .entry((general.clone(), elem.clone()))
                .or_default()
                .push((pol, surface)),
            Formula::Elem(p) => {
                elems.insert(p.clone());
            }
            _ => {}
        });
        let mut components: HashMap<Name, usize> = HashMap::new();
        for (_, e) in hybrids.keys() {
            *components.entry(e.clone()).or_default() += 1;
        }
        hybrids.iter().all(|((_, e), occ)| {
            occ.len() == 2
                && occ.iter().all(|(_, s)| *s)
                && occ.iter().filter(|(p, _)| p.is_positive()).count() == 1
                && !elems.contains(e)
                && components[e] == 1
        })
    }

    /// ASCII rendering with Unicode connectives.
    pub fn to_unicode(&self) -> String {
        let mut s = String::new();
        self.render(&mut s, true);
        s
    }

    fn render(&self, out: &mut String, unicode: bool) {
        let (not, and, or, imp, chand, chor, top, bot) = if unicode {
            ("¬", " ∧ ", " ∨ ", " → ", " ⊓ ", " ⊔ ", "⊤", "⊥")
        } else {
            ("~", " & ", " | ", " -> ", " * ", " + ", "tt", "ff")
        };
        let nary = |out: &mut String, cs: &[Formula], op: &str| {
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    out.push_str(op);
                }
                let paren = matches!(
                    c,
                    Formula::And(_) | Formula::Or(_) | Formula::Chand(_) | Formula::Chor(_) | Formula::Implies(..)
                );
                if paren {
                    out.push('(');
                }
                c.render(out, unicode);
                if paren {
                    out.push(')');
                }
            }
        };
        match self {
            Formula::Elem(p) | Formula::General(p) => out.push_str(p),
            Formula::Hybrid { general, elem } => {
                out.push_str(general);
                out.push('_');
                out.push_str(elem);
            }
            Formula::Top => out.push_str(top),
            Formula::Bot => out.push_str(bot),
            Formula::Neg(a) => {
                out.push_str(not);
                let paren = !(a.is_atom() || matches!(**a, Formula::Top | Formula::Bot | Formula::Neg(_)));
                if paren {
                    out.push('(');
                }
                a.render(out, unicode);
                if paren {
                    out.push(')');
                }
            }
            Formula::And(cs) => nary(out, cs, and),
            Formula::Or(cs) => nary(out, cs, or),
            Formula::Chand(cs) => nary(out, cs, chand),
            Formula::Chor(cs) => nary(out, cs, chor),
            Formula::Implies(a, b) => {
                for (i, side) in [a, b].into_iter().enumerate() {
                    if i == 1 {
                        out.push_str(imp);
                    }
                    let paren = matches!(**side, Formula::Implies(..));
                    if paren {
                        out.push('(');
                    }
                    side.render(out, unicode);
                    if paren {
                        out.push(')');
                    }
                }
            }
        }
    }
}

/// Canonical ASCII form; `parse` reads it back to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.render(&mut s, false);
        f.write_str(&s)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_with_reserved(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use crate::syntax::parse;

    #[test]
    fn balanced_examples() {
        assert!(parse("P_q | ~P_q").unwrap().is_balanced());
        assert!(!parse("P_q | P_q").unwrap().is_balanced());
        assert!(!parse("(P_q | ~P_q) & q").unwrap().is_balanced());
        assert!(!parse("(P_q | ~P_q) & (Q_q | ~Q_q)").unwrap().is_balanced());
        assert!(!parse("(P_q | ~P_q) * p").unwrap().is_balanced());
        assert!(parse("p & P -> p").unwrap().is_balanced());
    }

    #[test]
    fn dehybridize_examples() {
        assert_eq!(parse("P_q | ~P_q").unwrap().dehybridize(), parse("P | ~P").unwrap());
        assert_eq!(parse("p & P -> p").unwrap().dehybridize(), parse("p & P -> p").unwrap());
        assert_eq!(parse("P_q & Q_r").unwrap().dehybridize(), parse("P & Q").unwrap());
    }

    #[test]
    fn canonical_renaming_is_per_sort_first_occurrence() {
        let f = parse("(q & P_r) | (Q -> p)").unwrap();
        assert_eq!(f.canonical().to_string(), "(a1 & A1_a2) | (A2 -> a3)");
        let g = parse("(x & R_y) | (S -> z)").unwrap();
        assert_eq!(f.canonical(), g.canonical());
    }

    #[test]
    fn fresh_names_skip_used() {
        let f = parse("h1 & P_h2 -> h3").unwrap();
        assert_eq!(&*f.fresh_elem_name(), "h4");
        assert_eq!(&*parse("P").unwrap().fresh_elem_name(), "h1");
    }

    #[test]
    fn classification_predicates() {
        let f = parse("p * q -> p").unwrap();
        assert!(f.is_elementary_base() && !f.is_elementary() && f.is_cl2_formula());
        assert!(parse("p & ~q").unwrap().is_elementary());
        assert!(!parse("P_q").unwrap().is_cl2_formula());
    }
}
