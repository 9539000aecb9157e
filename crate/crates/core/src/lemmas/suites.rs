use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{TestCaseError, TestError, TestRunner};

use super::gen::*;
use super::oracle;
use crate::classical::eval;
use crate::games::{interpret, is_delay, is_manageable, negate_run, project, Game, Interpretation, LabeledMove, Player, Run};
use crate::syntax::{replace_at, split_move, surface_quasiatoms, Formula, OccKind, Polarity};

/// Outcome of one suite: `Err` carries the failure reason and the minimized input.
pub type Outcome = Result<(), (String, String)>;

fn finish<T: std::fmt::Debug>(r: Result<(), TestError<T>>) -> Outcome {
    r.map_err(|e| match e {
        TestError::Fail(reason, value) => (reason.to_string(), format!("{value:#?}")),
        TestError::Abort(reason) => (reason.to_string(), String::new()),
    })
}

fn fail(e: impl std::fmt::Display) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

fn ext(run: &[LabeledMove], more: impl IntoIterator<Item = LabeledMove>) -> Run {
    run.iter().cloned().chain(more).collect()
}

fn parallel(and: bool, cs: Vec<Game>) -> Game {
    if and {
        Game::and(cs)
    } else {
        Game::or(cs)
    }
}

fn choice(and: bool, cs: Vec<Game>) -> Game {
    if and {
        Game::chand(cs)
    } else {
        Game::chor(cs)
    }
}

fn component(i: usize) -> crate::syntax::SpecPath {
    crate::syntax::SpecPath::from_indices([i as u32 + 1])
}

pub fn prefixation(runner: &mut TestRunner) -> Outcome {
    finish(runner.run(&(arb_game(), vec(any::<u8>(), 0..8), any::<u8>()), |(g, choices, cut)| {
        let run = legal_run(&g, &choices);
        let k = cut as usize % (run.len() + 1);
        let whole = g.prefix(&run).map_err(fail)?;
        let stepwise = g.prefix(&run[..k]).and_then(|h| h.prefix(&run[k..])).map_err(fail)?;
        prop_assert_eq!(whole, stepwise);
        Ok(())
    }))
}

pub fn negation(runner: &mut TestRunner) -> Outcome {
    finish(runner.run(&(arb_game(), vec((any::<u8>(), any::<bool>()), 0..8)), |(g, steps)| {
        let neg = Game::neg(g.clone());
        let run = noisy_run(&neg, &steps);
        let lhs = neg.prefix(&run).ok();
        let rhs = g.prefix(&negate_run(&run)).ok().map(Game::neg);
        prop_assert_eq!(lhs, rhs);
        Ok(())
    }))
}

pub fn disjunction(runner: &mut TestRunner) -> Outcome {
    let input = (vec(arb_game(), 2..=3), vec(any::<u8>(), 0..8), any::<bool>());
    finish(runner.run(&input, |(cs, choices, and)| {
        let g = parallel(and, cs.clone());
        let run = legal_run(&g, &choices);
        let whole = g.prefix(&run).map_err(fail)?;
        let parts = cs
            .iter()
            .enumerate()
            .map(|(i, c)| c.prefix(&project(&run, &component(i))))
            .collect::<Result<Vec<_>, _>>()
            .map_err(fail)?;
        prop_assert_eq!(whole, parallel(and, parts));
        Ok(())
    }))
}

pub fn legality(runner: &mut TestRunner) -> Outcome {
    finish(runner.run(&(arb_game(), vec((any::<u8>(), any::<bool>()), 0..8)), |(g, steps)| {
        let run = noisy_run(&g, &steps);
        prop_assert_eq!(g.prefix(&run).is_ok(), oracle::is_legal(&g, &run), "run {:?}", run);
        let candidates = oracle::candidate_moves(&g);
        let legal_len = g.first_illegal(&run).map_or(run.len(), |(i, _)| i);
        for k in 0..=legal_len {
            let residual = g.prefix(&run[..k]).map_err(fail)?;
            let mut by_oracle: Vec<_> =
                candidates.iter().filter(|m| oracle::is_legal(&g, &ext(&run[..k], [(*m).clone()]))).cloned().collect();
            let mut by_engine = residual.legal_moves();
            by_oracle.sort_by(|a, b| (&a.mv, a.player).cmp(&(&b.mv, b.player)));
            by_engine.sort_by(|a, b| (&a.mv, a.player).cmp(&(&b.mv, b.player)));
            prop_assert_eq!(by_engine, by_oracle, "after {:?}", &run[..k]);
        }
        Ok(())
    }))
}

pub fn delay_illegality(runner: &mut TestRunner) -> Outcome {
    let input = (arb_game(), vec((any::<u8>(), any::<bool>()), 0..8), any::<bool>(), vec(any::<u8>(), 0..8));
    finish(runner.run(&input, |(g, steps, top, swaps)| {
        let player = Player::from_bool(top);
        let gamma = noisy_run(&g, &steps);
        let mut delta = gamma.clone();
        for s in swaps {
            let spots: Vec<usize> = (0..delta.len().saturating_sub(1))
                .filter(|&k| delta[k].player == player && delta[k + 1].player != player)
                .collect();
            if spots.is_empty() {
                break;
            }
            delta.swap(spots[s as usize % spots.len()], spots[s as usize % spots.len()] + 1);
        }
        prop_assert!(is_delay(player, &delta, &gamma));
        let offender = |r: &Run| g.first_illegal(r).map(|(_, p)| p);
        if offender(&delta) == Some(player) {
            prop_assert_eq!(offender(&gamma), Some(player), "Δ = {:?}, Γ = {:?}", delta, gamma);
        }
        if offender(&gamma) == Some(player.flip()) {
            prop_assert_eq!(offender(&delta), Some(player.flip()), "Δ = {:?}, Γ = {:?}", delta, gamma);
        }
        Ok(())
    }))
}

/// A balanced hyperformula, an interpretation, and a manageable legal run of it.
fn position_input() -> impl Strategy<Value = (Formula, Vec<u8>, u8, Vec<(u8, u8)>)> {
    (arb_balanced(), vec(any::<u8>(), 2), any::<u8>(), vec((any::<u8>(), any::<u8>()), 0..6))
}

fn position(f: &Formula, presets: &[u8], bits: u8, script: &[(u8, u8)]) -> Result<(Interpretation, Game, Run), TestCaseError> {
    let i = interpretation(f, presets, bits);
    let game = interpret(f, &i).map_err(fail)?;
    let Some(run) = manageable_run(f, &i, script) else {
        return Err(TestCaseError::reject("mirrored reply illegal"));
    };
    prop_assert!(game.prefix(&run).is_ok(), "generated run is illegal: {:?}", run);
    prop_assert!(is_manageable(&run, f).is_ok(), "generated run is unmanageable: {:?}", run);
    Ok((i, game, run))
}

pub fn choice_move(runner: &mut TestRunner) -> Outcome {
    finish(runner.run(&(position_input(), any::<u8>(), any::<u8>()), |((f, presets, bits, script), pick, idx)| {
        let (i, game, omega) = position(&f, &presets, bits, &script)?;
        let ours: Vec<_> = surface_quasiatoms(&f)
            .into_iter()
            .filter(|o| {
                matches!(
                    (o.kind, o.polarity),
                    (OccKind::ChorNode, Polarity::Positive) | (OccKind::ChandNode, Polarity::Negative)
                )
            })
            .collect();
        prop_assume!(!ours.is_empty());
        let occ = &ours[pick as usize % ours.len()];
        let kids = occ.subject.children();
        let j = idx as usize % kids.len();
        let h = replace_at(&f, &occ.spec, kids[j]).map_err(fail)?;
        let after = game.prefix(&ext(&omega, [LabeledMove::top(occ.spec.choice_move(j + 1))])).map_err(fail)?;
        let via_h = interpret(&h, &i).map_err(fail)?.prefix(&omega).map_err(fail)?;
        prop_assert_eq!(after, via_h);
        prop_assert!(is_manageable(&omega, &h).is_ok());
        Ok(())
    }))
}

pub fn catch_up(runner: &mut TestRunner) -> Outcome {
    finish(runner.run(&(position_input(), any::<u8>()), |((f, presets, bits, script), pick)| {
        let (i, _, omega) = position(&f, &presets, bits, &script)?;
        let occs = surface_quasiatoms(&f);
        let generals: Vec<_> = occs.iter().filter(|o| o.kind == OccKind::General).collect();
        let pairs: Vec<_> = generals
            .iter()
            .filter(|a| a.polarity == Polarity::Positive)
            .flat_map(|a| {
                generals.iter().filter(move |b| b.polarity == Polarity::Negative && b.subject == a.subject).map(move |b| (*a, *b))
            })
            .collect();
        prop_assume!(!pairs.is_empty());
        let (pi, nu) = pairs[pick as usize % pairs.len()];
        let Formula::General(name) = &pi.subject else { unreachable!() };
        let hyb = Formula::hybrid(name, "c1");
        let h = replace_at(&replace_at(&f, &pi.spec, &hyb).map_err(fail)?, &nu.spec, &hyb).map_err(fail)?;
        let caught: Run = ext(
            &omega,
            project(&omega, &nu.spec)
                .iter()
                .map(|m| LabeledMove::top(pi.spec.prefix_move(&m.mv)))
                .chain(project(&omega, &pi.spec).iter().map(|m| LabeledMove::top(nu.spec.prefix_move(&m.mv)))),
        );
        let game = interpret(&h, &i).map_err(fail)?;
        prop_assert!(game.prefix(&caught).is_ok(), "catch-up {:?} is illegal in {}", caught, h);
        prop_assert_eq!(is_manageable(&caught, &h), crate::games::Manageability::Ok, "in {}", h);
        Ok(())
    }))
}

pub fn classification(runner: &mut TestRunner) -> Outcome {
    finish(runner.run(&position_input(), |(f, presets, bits, script)| {
        let (i, game, omega) = position(&f, &presets, bits, &script)?;
        let residual = game.prefix(&omega).map_err(fail)?;
        for alpha in residual.legal_moves().into_iter().filter(|m| m.player == Player::Bot) {
            let Some((spec, _, subject, rest)) = split_move(&f, &alpha.mv) else {
                return Err(fail(format!("⊥{} enters no quasiatom", alpha.mv)));
            };
            match subject {
                Formula::General(_) => {
                    let next = ext(&omega, [alpha.clone()]);
                    prop_assert!(is_manageable(&next, &f).is_ok(), "general-atom case {:?}", next);
                }
                Formula::Hybrid { .. } => {
                    let sigma = twin(&f, &spec).ok_or_else(|| fail("hybrid without twin"))?;
                    let next = ext(&omega, [alpha.clone(), LabeledMove::top(sigma.prefix_move(rest))]);
                    prop_assert!(game.prefix(&next).is_ok(), "mirrored reply illegal {:?}", next);
                    prop_assert!(is_manageable(&next, &f).is_ok(), "hybrid-atom case {:?}", next);
                }
                Formula::Chand(kids) | Formula::Chor(kids) => {
                    let j: usize = rest.parse().map_err(|_| fail(format!("⊥{} is not a choice", alpha.mv)))?;
                    let h = replace_at(&f, &spec, &kids[j - 1]).map_err(fail)?;
                    let after = game.prefix(&ext(&omega, [alpha.clone()])).map_err(fail)?;
                    let via_h = interpret(&h, &i).map_err(fail)?.prefix(&omega).map_err(fail)?;
                    prop_assert_eq!(after, via_h);
                    prop_assert!(is_manageable(&omega, &h).is_ok());
                }
                other => return Err(fail(format!("⊥{} enters {other}", alpha.mv))),
            }
        }
        Ok(())
    }))
}

pub fn monotonicity(runner: &mut TestRunner) -> Outcome {
    let input = (arb_elementary(), any::<u8>(), any::<u8>(), arb_elementary());
    finish(runner.run(&input, |(f, bits, pick, r)| {
        let occs = surface_quasiatoms(&f);
        prop_assume!(!occs.is_empty());
        let v = |name: &str| bits >> (name.as_bytes()[0] - b'p') & 1 == 1;
        let occ = &occs[pick as usize % occs.len()];
        let old = eval(&occ.subject, &v);
        let new = eval(&r, &v);
        let replacement = match occ.polarity {
            Polarity::Positive if !new && old => Formula::Top,
            Polarity::Negative if new && !old => Formula::Bot,
            _ => r,
        };
        let g = replace_at(&f, &occ.spec, &replacement).map_err(fail)?;
        prop_assert!(eval(&g, &v) >= eval(&f, &v), "{} became {}", f, g);
        Ok(())
    }))
}

pub fn finalization_negation(runner: &mut TestRunner) -> Outcome {
    finish(runner.run(&(arb_game(), vec((any::<u8>(), any::<bool>()), 0..8)), |(g, steps)| {
        let neg = Game::neg(g.clone());
        let run = noisy_run(&neg, &steps);
        prop_assert_eq!(neg.winner(&run), g.winner(&negate_run(&run)).flip());
        Ok(())
    }))
}

pub fn finalization_disjunction(runner: &mut TestRunner) -> Outcome {
    let input = (vec(arb_game(), 2..=3), vec(any::<u8>(), 0..8), any::<bool>());
    finish(runner.run(&input, |(cs, choices, and)| {
        let g = parallel(and, cs.clone());
        let run = legal_run(&g, &choices);
        let mut parts = cs.iter().enumerate().map(|(i, c)| c.winner(&project(&run, &component(i))).is_top());
        let expected = if and { parts.all(|w| w) } else { parts.any(|w| w) };
        prop_assert_eq!(g.winner(&run), Player::from_bool(expected));
        Ok(())
    }))
}

pub fn finalization_choice(runner: &mut TestRunner) -> Outcome {
    let input = (vec(arb_game(), 2..=3), vec(any::<u8>(), 1..8), any::<bool>());
    finish(runner.run(&input, |(cs, choices, and)| {
        let g = choice(and, cs.clone());
        prop_assert_eq!(g.winner(&[]), Player::from_bool(and));
        let run = legal_run(&g, &choices);
        let i: usize = run[0].mv.parse().map_err(fail)?;
        prop_assert_eq!(g.winner(&run), cs[i - 1].winner(&run[1..]));
        Ok(())
    }))
}

pub fn manageable_win(runner: &mut TestRunner) -> Outcome {
    let input = (arb_stable_balanced(), vec(any::<u8>(), 2), any::<u8>(), vec((any::<u8>(), any::<u8>()), 0..8));
    finish(runner.run(&input, |(f, presets, bits, script)| {
        let (_, game, run) = position(&f, &presets, bits, &script)?;
        prop_assert_eq!(game.winner(&run), Player::Top, "run {:?}", run);
        Ok(())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unstable_formulas_yield_a_shrunk_counterexample() {
        let mut runner = crate::lemmas::runner(64, 1);
        let out = finish(runner.run(&position_input(), |(f, presets, bits, script)| {
            let (_, game, run) = position(&f, &presets, bits, &script)?;
            prop_assert_eq!(game.winner(&run), Player::Top);
            Ok(())
        }));
        let (_, shown) = out.unwrap_err();
        assert!(shown.len() < 200, "not minimized: {shown}");
        eprintln!("{shown}");
    }
}
