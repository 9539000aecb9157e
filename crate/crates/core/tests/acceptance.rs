//! Acceptance run: one PASS/FAIL line per criterion, executed one after
//! another so the timing bounds are measured without interference.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cl2::calculus::{check_proof, hybridize, prove, Budget, Decider, ProofNode, System};
use cl2::classical::is_tautology;
use cl2::completeness::{ceiling, claim1_translate, floor, is_good, refute_with, MMode, MoleculeScheme, Refutation};
use cl2::enumerate::{random_formula, Connective, Enumeration};
use cl2::games::{Interpretation, Preset};
use cl2::lemmas::{run_suite, Suite};
use cl2::strategy::verify_all;
use cl2::syntax::{parse, Formula};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 2024;

/// Formulas with their expected CL2 verdicts.
const GOLDEN: [(&str, bool); 11] = [
    ("P | ~P", true),
    ("P + ~P", false),
    ("P -> P * P", true),
    ("(P & Q) | (R & S) -> (P | R) & (Q | S)", true),
    ("p & (p -> Q) & (p -> R) -> Q & R", true),
    ("P & (P -> Q) & (P -> R) -> Q & R", false),
    ("P * (Q | R) -> (P * Q) | (P * R)", true),
    ("(P * Q) | (P * R) -> P * (Q | R)", false),
    ("(p * Q) | (p * R) -> p * (Q | R)", true),
    ("P & P -> P", true),
    ("P -> P & P", false),
];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn f(s: &str) -> Formula {
    parse(s).expect("fixture parses")
}

/// CL2-provable formulas over {p, P} with at most `n` connectives and at least one general atom.
fn general_corpus(n: usize) -> Vec<Formula> {
    let mut e = Enumeration::new(vec![Formula::elem("p"), Formula::general("P")], &Connective::ALL);
    let mut d = Decider::new(System::Cl2).with_memo_cap(1_000_000);
    let mut out = Vec::new();
    for k in 0..=n {
        e.for_each(k, |g| {
            if !g.general_names().is_empty() && d.decide_once(&g).expect("CL2 formula") {
                out.push(g);
            }
        });
    }
    out
}

fn golden() -> Outcome {
    let start = Instant::now();
    let wrong: Vec<_> =
        GOLDEN.iter().filter(|(src, want)| cl2::calculus::decide(&f(src), System::Cl2).ok() != Some(*want)).collect();
    let t = start.elapsed();
    let ok = wrong.is_empty() && t < Duration::from_secs(5);
    outcome(ok, format!("{}/{} verdicts exact in {t:.2?} (bound 5s); wrong: {wrong:?}", GOLDEN.len() - wrong.len(), GOLDEN.len()))
}

fn conservativity() -> Outcome {
    let start = Instant::now();
    let mut d1 = Decider::new(System::Cl1).with_memo_cap(1_000_000);
    let mut d2 = Decider::new(System::Cl2).with_memo_cap(1_000_000);
    let mut e = Enumeration::new(vec![Formula::elem("p"), Formula::elem("q")], &Connective::ALL);
    let (mut count, mut elementary, mut mismatches) = (0u64, 0u64, Vec::new());
    let mut check = |g: Formula| {
        count += 1;
        let (a, b) = (d1.decide_once(&g).expect("CL1 formula"), d2.decide_once(&g).expect("CL2 formula"));
        let taut_ok = !g.is_elementary() || {
            elementary += 1;
            is_tautology(&g).ok() == Some(b)
        };
        if a != b || !taut_ok {
            mismatches.push(g.to_string());
        }
    };
    for k in 0..=5 {
        e.for_each(k, &mut check);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let atoms = [Formula::elem("p"), Formula::elem("q"), Formula::elem("r")];
    for _ in 0..500 {
        check(random_formula(&mut rng, &atoms, 8));
    }
    let t = start.elapsed();
    let ok = mismatches.is_empty() && t < Duration::from_secs(60);
    outcome(
        ok,
        format!("{count} formulas ({elementary} elementary), {} mismatches in {t:.2?} (bound 60s) {:?}", mismatches.len(), mismatches.iter().take(5).collect::<Vec<_>>()),
    )
}

fn soundness() -> Outcome {
    let start = Instant::now();
    let mut formulas: Vec<Formula> = [1, 3, 4, 5, 7, 9].iter().map(|&i| f(GOLDEN[i - 1].0)).collect();
    formulas.push(f("P & P -> P"));
    formulas.push(f("P -> P * P"));
    let named = formulas.len();
    formulas.extend(general_corpus(4));
    let (mut branches, mut interps, mut failures) = (0usize, 0usize, Vec::new());
    for g in &formulas {
        match verify_all(g, &Interpretation::family(g, &Preset::standard())) {
            Ok(r) => {
                branches += r.branches;
                interps += r.interpretations;
                if !r.passed() {
                    failures.push(format!("{g}: {} ⊥ wins, {:?}", r.bot_wins, r.violations.first()));
                }
            }
            Err(e) => failures.push(format!("{g}: {e}")),
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} formulas ({named} named + {} enumerated), {interps} interpretations, {branches} branches, ⊤ won 100%: {} in {:.2?}; {:?}",
            formulas.len(),
            formulas.len() - named,
            failures.is_empty(),
            start.elapsed(),
            failures.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

fn refutation() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (row, bound) in [(1, 60), (7, 60), (5, 600)] {
        let text = GOLDEN[row].0;
        let start = Instant::now();
        let budget = Budget { time: Some(Duration::from_secs(bound)), ..Budget::default() };
        let verdict = match refute_with(&f(text), MMode::PerAtom, budget) {
            Ok(Refutation::Certificate(c)) if c.holds() && start.elapsed() < Duration::from_secs(bound) => {
                format!("certificate (m={}, {} subgoals)", c.scheme.m, c.explored)
            }
            Ok(other) => {
                ok = false;
                format!("unexpected {other:?}")
            }
            Err(e) => {
                ok = false;
                format!("{e}")
            }
        };
        parts.push(format!("{text}: {verdict} in {:.2?} (bound {bound}s)", start.elapsed()));
    }
    outcome(ok, parts.join("; "))
}

/// Random formulas over one general atom's m=2 molecules and `p`, kept when
/// good and CL1-provable.
fn generated_good(want: usize) -> Vec<(Formula, MoleculeScheme)> {
    let scheme = MoleculeScheme::new(2, ["P".into()]);
    let mut atoms = vec![Formula::elem("p"), scheme.large("P")];
    for a in 1..=2 {
        atoms.push(scheme.medium("P", a));
        for b in 1..=2 {
            atoms.push(scheme.small("P", a, b));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut d = Decider::new(System::Cl1);
    let mut out = Vec::new();
    for _ in 0..200_000 {
        if out.len() == want {
            break;
        }
        let g = random_formula(&mut rng, &atoms, 4);
        if is_good(&g, &scheme).is_ok() && d.decide(&g).unwrap_or(false) && !out.iter().any(|(h, _)| *h == g) {
            out.push((g, scheme.clone()));
        }
    }
    out
}

fn claim1() -> Outcome {
    let start = Instant::now();
    let mut cases: Vec<(Formula, MoleculeScheme)> = Vec::new();
    for g in general_corpus(3).iter().chain(GOLDEN.iter().filter(|(_, p)| *p).map(|(s, _)| f(s)).collect::<Vec<_>>().iter()) {
        if let Ok((c, s)) = ceiling(g, MMode::PerAtom) {
            cases.push((c, s));
        }
    }
    let from_ceilings = cases.len();
    cases.extend(generated_good(100));
    let mut failures = Vec::new();
    for (e, s) in &cases {
        let result = prove(e, System::Cl1)
            .map_err(|e| e.to_string())
            .and_then(|p| p.ok_or_else(|| "not CL1-provable".to_string()))
            .and_then(|p| claim1_translate(&p, s).map_err(|e| e.to_string()))
            .and_then(|out| {
                check_proof(&out, System::Cl2).map_err(|e| e.to_string())?;
                (out.conclusion == floor(e, s)).then_some(()).ok_or_else(|| "wrong conclusion".to_string())
            });
        if let Err(why) = result {
            failures.push(format!("{e}: {why}"));
        }
    }
    outcome(
        failures.is_empty() && cases.len() >= 100,
        format!(
            "{} good CL1-provable formulas ({from_ceilings} ceilings, {} generated), {} failures in {:.2?} {:?}",
            cases.len(),
            cases.len() - from_ceilings,
            failures.len(),
            start.elapsed(),
            failures.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

fn identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let atoms = [Formula::elem("p"), Formula::elem("q"), Formula::general("P"), Formula::general("Q")];
    let mut failures = Vec::new();
    for k in 0..1000 {
        let g = random_formula(&mut rng, &atoms, 7);
        let mode = if k % 2 == 0 { MMode::Total } else { MMode::PerAtom };
        match ceiling(&g, mode) {
            Ok((c, s)) if floor(&c, &s) == g && is_good(&c, &s).is_ok() => {}
            other => failures.push(format!("{g} [{mode}]: {other:?}")),
        }
    }
    outcome(failures.is_empty(), format!("1000 random formulas, {} failures {:?}", failures.len(), failures.first()))
}

fn lemma_suites() -> Outcome {
    let start = Instant::now();
    let reports: Vec<_> = Suite::ALL.iter().map(|&s| run_suite(s, 1000, SEED)).collect();
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed).collect();
    for r in &failed {
        eprintln!("suite {} failed: {}\nminimized counterexample:\n{}", r.suite, r.reason.clone().unwrap_or_default(), r.counterexample.clone().unwrap_or_default());
    }
    outcome(
        failed.is_empty(),
        format!(
            "{} suites x 1000 cases, {} violated {:?} in {:.2?}",
            reports.len(),
            failed.len(),
            failed.iter().map(|r| &r.suite).collect::<Vec<_>>(),
            start.elapsed()
        ),
    )
}

fn balanced_everywhere(p: &ProofNode) -> bool {
    p.conclusion.is_balanced() && p.children.iter().all(balanced_everywhere)
}

fn hygiene() -> Outcome {
    let start = Instant::now();
    let mut formulas: Vec<Formula> = GOLDEN.iter().filter(|(_, p)| *p).map(|(s, _)| f(s)).collect();
    formulas.extend(general_corpus(4));
    let mut e = Enumeration::new(vec![Formula::elem("p"), Formula::elem("q")], &Connective::ALL);
    for k in 0..=3 {
        e.for_each(k, |g| formulas.push(g));
    }
    let mut d = Decider::new(System::Cl2).with_memo_cap(1_000_000);
    let (mut proofs, mut failures) = (0, Vec::new());
    for g in &formulas {
        let Ok(Some(p)) = d.prove(g) else { continue };
        proofs += 1;
        let verdict = hybridize(&p).map_err(|e| e.to_string()).and_then(|h| {
            check_proof(&h, System::Cl2Circ).map_err(|e| e.to_string())?;
            balanced_everywhere(&h).then_some(()).ok_or_else(|| "unbalanced node".to_string())
        });
        if let Err(why) = verdict {
            failures.push(format!("{g}: {why}"));
        }
    }
    outcome(
        failures.is_empty() && proofs > 0,
        format!("{proofs} proofs hybridized and checked in CL2°, {} failures in {:.2?} {:?}", failures.len(), start.elapsed(), failures.first()),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("golden provability table", golden),
        ("conservativity", conservativity),
        ("soundness sweep", soundness),
        ("refutation pipeline", refutation),
        ("claim-1 round trip", claim1),
        ("ceiling/floor identities", identities),
        ("lemma property suites", lemma_suites),
        ("proof hygiene", hygiene),
    ];
    let filter = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let mut all = true;
    for (name, run) in criteria {
        if filter.as_deref().is_some_and(|f| !name.contains(f)) {
            continue;
        }
        let o = run();
        all &= o.passed;
        println!("{} {name}: {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
