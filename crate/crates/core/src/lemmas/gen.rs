use std::collections::VecDeque;

use proptest::collection::vec;
use proptest::prelude::*;

use crate::games::{interpret, Game, Interpretation, LabeledMove, Player, Preset, Run};
use crate::syntax::{replace_at, split_move, surface_quasiatoms, Formula, OccKind, Polarity, SpecPath};

pub fn arb_game() -> impl Strategy<Value = Game> {
    let leaf = prop_oneof![Just(Game::TOP), Just(Game::BOT)];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(Game::neg),
            vec(inner.clone(), 2..=3).prop_map(Game::and),
            vec(inner.clone(), 2..=3).prop_map(Game::or),
            vec(inner.clone(), 2..=3).prop_map(Game::chand),
            vec(inner, 2..=3).prop_map(Game::chor),
        ]
    })
}

/// Formulas over `p`, `q`, `P`, `Q` with every connective.
pub fn arb_formula(depth: u32, size: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        1 => Just(Formula::elem("p")),
        1 => Just(Formula::elem("q")),
        3 => Just(Formula::general("P")),
        2 => Just(Formula::general("Q")),
    ];
    leaf.prop_recursive(depth, size, 3, |inner| {
        prop_oneof![
            1 => inner.clone().prop_map(Formula::neg),
            2 => vec(inner.clone(), 2..=3).prop_map(Formula::and),
            2 => vec(inner.clone(), 2..=3).prop_map(Formula::or),
            1 => (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            1 => vec(inner.clone(), 2..=2).prop_map(Formula::chand),
            1 => vec(inner, 2..=2).prop_map(Formula::chor),
        ]
    })
}

/// Elementary formulas over `p`, `q`, `r`, `⊤`, `⊥`.
pub fn arb_elementary() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::elem("p")),
        Just(Formula::elem("q")),
        Just(Formula::elem("r")),
        Just(Formula::Top),
        Just(Formula::Bot),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::neg),
            vec(inner.clone(), 2..=3).prop_map(Formula::and),
            vec(inner.clone(), 2..=3).prop_map(Formula::or),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::implies(a, b)),
        ]
    })
}

/// The run obtained by repeatedly taking legal move `c mod n` from the residual.
pub fn legal_run(g: &Game, choices: &[u8]) -> Run {
    let mut cur = g.clone();
    let mut run = Vec::new();
    for &c in choices {
        let moves = cur.legal_moves();
        if moves.is_empty() {
            break;
        }
        let m = moves[c as usize % moves.len()].clone();
        cur = cur.apply(m.player, &m.mv).expect("listed move is legal");
        run.push(m);
    }
    run
}

/// Like [`legal_run`], but a step whose flag is set plays its move with the
/// wrong label, or a bogus move once the game is exhausted.
pub fn noisy_run(g: &Game, steps: &[(u8, bool)]) -> Run {
    let mut cur = g.clone();
    let mut run = Vec::new();
    for &(c, corrupt) in steps {
        let moves = cur.legal_moves();
        let player = if c % 2 == 0 { Player::Top } else { Player::Bot };
        if moves.is_empty() {
            run.push(LabeledMove::new(player, (c % 3 + 1).to_string()));
            continue;
        }
        let m = moves[c as usize % moves.len()].clone();
        if corrupt {
            run.push(LabeledMove::new(m.player.flip(), m.mv));
        } else {
            cur = cur.apply(m.player, &m.mv).expect("listed move is legal");
            run.push(m);
        }
    }
    run
}

/// Replaces some pairs of opposite-polarity surface occurrences of the same
/// general atom by hybrid atoms `P_h1`, `P_h2`, ...; the result is balanced.
pub fn hybridize_pairs(f: &Formula, picks: &[u8]) -> Formula {
    let mut g = f.clone();
    let mut k = 0;
    for &pick in picks {
        let occs = surface_quasiatoms(&g);
        let generals: Vec<_> = occs.iter().filter(|o| o.kind == OccKind::General).collect();
        let pairs: Vec<_> = generals
            .iter()
            .filter(|a| a.polarity == Polarity::Positive)
            .flat_map(|a| {
                generals.iter().filter(move |b| b.polarity == Polarity::Negative && b.subject == a.subject).map(move |b| (*a, *b))
            })
            .collect();
        if pairs.is_empty() {
            break;
        }
        let (a, b) = pairs[pick as usize % pairs.len()];
        let Formula::General(name) = &a.subject else { unreachable!() };
        k += 1;
        let h = Formula::hybrid(name, &format!("h{k}"));
        g = replace_at(&replace_at(&g, &a.spec, &h).unwrap(), &b.spec, &h).unwrap();
    }
    g
}

/// `G ∨ ¬G ∨ R` with every surface general atom of `G` paired with its
/// mirror image in `¬G`; always stable and balanced.
pub fn mirrored(g: &Formula, rest: &Formula) -> Formula {
    let occs: Vec<_> = surface_quasiatoms(g).into_iter().filter(|o| o.kind == OccKind::General).collect();
    let mut left = g.clone();
    for (k, o) in occs.iter().enumerate() {
        let Formula::General(name) = &o.subject else { unreachable!() };
        left = replace_at(&left, &o.spec, &Formula::hybrid(name, &format!("h{}", k + 1))).unwrap();
    }
    Formula::or(vec![left.clone(), Formula::neg(left), rest.clone()])
}

/// Balanced hyperformulas, about half of them stable by construction.
pub fn arb_balanced() -> impl Strategy<Value = Formula> {
    prop_oneof![
        (arb_formula(3, 12), vec(any::<u8>(), 0..4)).prop_map(|(f, picks)| hybridize_pairs(&f, &picks)),
        (arb_formula(2, 6), arb_formula(2, 6)).prop_map(|(g, r)| mirrored(&g, &r)),
    ]
}

/// Stable balanced hyperformulas.
pub fn arb_stable_balanced() -> impl Strategy<Value = Formula> {
    prop_oneof![
        (arb_formula(2, 8), arb_formula(2, 6)).prop_map(|(g, r)| mirrored(&g, &r)),
        (arb_formula(3, 12), vec(any::<u8>(), 0..4))
            .prop_map(|(f, picks)| hybridize_pairs(&f, &picks))
            .prop_filter("stable", crate::classical::is_stable),
    ]
}

/// A perfect interpretation: one preset per general atom, one bit per elementary atom.
pub fn interpretation(f: &Formula, presets: &[u8], bits: u8) -> Interpretation {
    let all = Preset::standard();
    let mut i = Interpretation::new();
    for (k, e) in f.elem_atoms().iter().enumerate() {
        i.elementary.insert(e.clone(), Player::from_bool(bits >> (k % 8) & 1 == 1));
    }
    for (k, g) in f.general_names().iter().enumerate() {
        let p = presets.get(k).copied().unwrap_or(0) as usize % all.len();
        i.general.insert(g.clone(), all[p].game());
    }
    i
}

/// The other occurrence of the hybrid atom at `spec`.
pub fn twin(f: &Formula, spec: &SpecPath) -> Option<SpecPath> {
    let occs = surface_quasiatoms(f);
    let me = occs.iter().find(|o| &o.spec == spec)?;
    occs.iter().find(|o| o.kind == OccKind::Hybrid && o.subject == me.subject && o.spec != *spec).map(|o| o.spec.clone())
}

/// ⊥ moves inside surface general or hybrid atoms, legal in `g`.
pub fn atom_moves(f: &Formula, g: &Game) -> Vec<LabeledMove> {
    g.legal_moves()
        .into_iter()
        .filter(|m| {
            m.player == Player::Bot
                && matches!(split_move(f, &m.mv), Some((_, _, Formula::General(_) | Formula::Hybrid { .. }, _)))
        })
        .collect()
}

/// Randomized play toward an `f`-manageable run: ⊥ moves inside atoms, and
/// each ⊥ move inside a hybrid atom is answered by ⊤ with the same move in
/// the twin occurrence, possibly after a delay. Pending answers are flushed
/// at the end. `None` when some answer turns out illegal.
pub fn manageable_run(f: &Formula, i: &Interpretation, script: &[(u8, u8)]) -> Option<Run> {
    let mut g = interpret(f, i).ok()?;
    let mut run = Vec::new();
    let mut pending: VecDeque<LabeledMove> = VecDeque::new();
    let flush = |g: &mut Game, run: &mut Run, m: LabeledMove| -> Option<()> {
        *g = g.apply(m.player, &m.mv).ok()?;
        run.push(m);
        Some(())
    };
    for &(pick, wait) in script {
        for _ in 0..(wait as usize % (pending.len() + 1)) {
            let m = pending.pop_front()?;
            flush(&mut g, &mut run, m)?;
        }
        let moves = atom_moves(f, &g);
        if moves.is_empty() {
            continue;
        }
        let m = moves[pick as usize % moves.len()].clone();
        let (spec, _, subject, rest) = split_move(f, &m.mv)?;
        let reply = matches!(subject, Formula::Hybrid { .. }).then(|| twin(f, &spec)).flatten();
        let rest = rest.to_string();
        flush(&mut g, &mut run, m)?;
        if let Some(sigma) = reply {
            pending.push_back(LabeledMove::top(sigma.prefix_move(&rest)));
        }
    }
    while let Some(m) = pending.pop_front() {
        flush(&mut g, &mut run, m)?;
    }
    Some(run)
}
