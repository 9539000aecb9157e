//! Command-line front end and play service for the CL2 workbench.
//!
//! Exit codes: 0 success or provable, 1 unprovable, 2 usage or parse
//! error, 3 an internal invariant was violated.

pub mod service;

use std::fs;
use std::io::{self, BufRead, Write};
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cl2::calculus::{check_proof, hybridize, Budget, Decider, ProofNode, System};
use cl2::completeness::{refute_with, MMode, Refutation};
use cl2::games::{show_run, Interpretation, Player, Preset};
use cl2::lemmas::{run_all, run_suite, Suite};
use cl2::strategy::{
    playout, strategy_for, verify_all, Adversary, Decision, RandomAdversary, ScriptedAdversary, Session,
    StrategyError,
};
use cl2::syntax::{parse, Formula};
use serde_json::json;

pub const OK: u8 = 0;
pub const UNPROVABLE: u8 = 1;
pub const USAGE: u8 = 2;
pub const VIOLATION: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "cl2", version, about = "Decide, prove, refute and play CL2 formulas")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide provability.
    Decide {
        formula: String,
        #[arg(long, default_value = "cl2")]
        system: System,
        /// Print every subgoal the search settled, with its witness.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print a proof tree.
    Prove {
        formula: String,
        /// `cl2circ` proves in CL2 and converts rule (c) steps.
        #[arg(long, default_value = "cl2")]
        system: System,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check a JSON proof file.
    Check {
        proof: PathBuf,
        #[arg(long, default_value = "cl2")]
        system: System,
    },
    /// Play the extracted strategy against an adversary.
    Play {
        #[arg(conflicts_with = "formula_flag", required_unless_present = "formula_flag")]
        formula: Option<String>,
        #[arg(long = "formula", value_name = "FORMULA")]
        formula_flag: Option<String>,
        #[command(flatten)]
        interp: InterpArgs,
        /// `random`, `stdin` or `script:<file>` (one move per line).
        #[arg(long, default_value = "random")]
        adversary: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Probability that the random adversary stops at each turn.
        #[arg(long, default_value_t = 0.2)]
        stop: f64,
        #[arg(long)]
        json: bool,
    },
    /// Explore every adversary behaviour under a family of interpretations.
    Verify {
        #[arg(conflicts_with = "formula_flag", required_unless_present = "formula_flag")]
        formula: Option<String>,
        #[arg(long = "formula", value_name = "FORMULA")]
        formula_flag: Option<String>,
        /// `standard`, `molecules:m=1`, `molecules:m=2`, or comma-separated preset names.
        #[arg(long, default_value = "standard")]
        interp_family: String,
        /// Exploration is always exhaustive; accepted for symmetry with scripts.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        json: bool,
    },
    /// Build a refutation certificate for an unprovable formula.
    Refute {
        formula: String,
        /// `per-atom`, `total` or a number.
        #[arg(long, default_value = "per-atom")]
        m: MMode,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Time limit for the CL1 search on the ceiling, in seconds.
        #[arg(long, default_value_t = 600)]
        budget_secs: u64,
    },
    /// Run the randomized lemma suites.
    Lemmas {
        /// A suite name or `all`.
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1000)]
        cases: u32,
        /// Defaults to `CL2_SEED`, then 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Serve the play protocol over HTTP.
    Serve {
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Illegal moves forfeit the session instead of being rejected.
        #[arg(long)]
        strict: bool,
        /// Sessions idle this long are dropped.
        #[arg(long, default_value_t = 1800)]
        idle_secs: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct InterpArgs {
    /// Interpretation: a JSON file, or a preset name applied to every general atom.
    #[arg(long, default_value = "molecule(m=2,leaves=TF)")]
    pub interp: String,
    /// Elementary atom values, e.g. `p=F`; unset atoms are true.
    #[arg(long = "set", value_name = "ATOM=T|F")]
    pub set: Vec<String>,
}

/// A failure that ends the command with the given exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Failure {
        Failure { code: USAGE, message: message.to_string() }
    }
}

type Outcome = Result<u8, Failure>;

/// The seed from `CL2_SEED`, or 0.
pub fn default_seed() -> u64 {
    std::env::var("CL2_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0)
}

fn formula(text: &str) -> Result<Formula, Failure> {
    parse(text).map_err(|e| Failure::usage(format!("parse error: {e}")))
}

fn strategy_failure(e: StrategyError) -> Failure {
    match e {
        StrategyError::Unprovable(f) => Failure { code: UNPROVABLE, message: format!("unprovable: {f}") },
        StrategyError::Game(_) | StrategyError::Uncovered(_) => Failure::usage(e),
        other => Failure { code: VIOLATION, message: other.to_string() },
    }
}

/// Builds the interpretation for `f` from a file or a preset name.
pub fn interpretation(f: &Formula, args: &InterpArgs) -> Result<Interpretation, Failure> {
    let mut i = match Preset::from_name(&args.interp) {
        Some(p) => {
            let mut i = Interpretation::new();
            for g in f.general_names() {
                i.general.insert(g, p.game());
            }
            i
        }
        None => {
            let text = fs::read_to_string(&args.interp)
                .map_err(|e| Failure::usage(format!("{}: not a preset or readable file ({e})", args.interp)))?;
            Interpretation::from_json(&text).map_err(Failure::usage)?
        }
    };
    for e in f.elem_atoms() {
        i.elementary.entry(e).or_insert(Player::Top);
    }
    for s in &args.set {
        let (k, v) = s.split_once('=').ok_or_else(|| Failure::usage(format!("bad --set `{s}`")))?;
        let v = match v {
            "T" | "t" | "1" | "true" => Player::Top,
            "F" | "f" | "0" | "false" => Player::Bot,
            _ => return Err(Failure::usage(format!("bad value in --set `{s}`"))),
        };
        i.elementary.insert(k.into(), v);
    }
    if !i.covers(f) {
        return Err(Failure::usage(format!("interpretation does not cover every atom of `{f}`")));
    }
    Ok(i)
}

/// Parses an interpretation family name.
pub fn family(name: &str) -> Result<Vec<Preset>, Failure> {
    match name {
        "standard" => Ok(Preset::standard()),
        "molecules:m=2" => Ok(Preset::molecules2()),
        "molecules:m=1" => Ok(vec![Preset::Molecule1(true), Preset::Molecule1(false)]),
        list => list
            .split(',')
            .map(|s| Preset::from_name(s.trim()).ok_or_else(|| Failure::usage(format!("unknown preset `{s}`"))))
            .collect(),
    }
}

/// Reads adversary moves from stdin, showing the position on stderr.
struct StdinAdversary;

impl Adversary for StdinAdversary {
    fn decide(&mut self, session: &Session) -> Decision {
        let moves = session.adversary_moves();
        eprintln!("position: {}", session.residual());
        eprintln!("run: {}", show_run(session.theta()));
        eprintln!("your moves: {} (empty line or `stop` to stop)", moves.join(" "));
        eprint!("> ");
        let _ = io::stderr().flush();
        let mut line = String::new();
        match io::stdin().lock().read_line(&mut line) {
            Ok(n) if n > 0 && !matches!(line.trim(), "" | "stop") => Decision::Move(line.trim().to_string()),
            _ => Decision::Stop,
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Outcome {
    match cli.command {
        Command::Decide { formula: text, system, trace, json } => {
            let f = formula(&text)?;
            let mut decider = Decider::new(system);
            let provable = decider.decide(&f).map_err(Failure::usage)?;
            if json {
                let _ = writeln!(out, "{}", json!({ "formula": f.to_string(), "system": system, "provable": provable }));
            } else {
                let _ = writeln!(out, "{}", if provable { "provable" } else { "unprovable" });
            }
            if trace {
                for (g, w) in decider.trace() {
                    match w {
                        Some(w) => {
                            let _ = writeln!(out, "  ✓ {g}   {w:?}");
                        }
                        None => {
                            let _ = writeln!(out, "  ✗ {g}");
                        }
                    }
                }
            }
            Ok(if provable { OK } else { UNPROVABLE })
        }
        Command::Prove { formula: text, system, format } => {
            let f = formula(&text)?;
            let base = if system == System::Cl2Circ { System::Cl2 } else { system };
            let Some(mut proof) = Decider::new(base).prove(&f).map_err(Failure::usage)? else {
                let _ = writeln!(out, "unprovable");
                return Ok(UNPROVABLE);
            };
            if system == System::Cl2Circ {
                proof = hybridize(&proof).map_err(|e| Failure { code: VIOLATION, message: e.to_string() })?;
            }
            let _ = match format {
                Format::Text => write!(out, "{}", proof.to_text()),
                Format::Json => writeln!(out, "{}", proof.to_json()),
            };
            Ok(OK)
        }
        Command::Check { proof, system } => {
            let text = fs::read_to_string(&proof).map_err(|e| Failure::usage(format!("{}: {e}", proof.display())))?;
            let node = ProofNode::from_json(&text).map_err(|e| Failure::usage(format!("bad proof file: {e}")))?;
            match check_proof(&node, system) {
                Ok(()) => {
                    let _ = writeln!(out, "valid {system} proof of {}", node.conclusion);
                    Ok(OK)
                }
                Err(e) => {
                    let _ = writeln!(out, "invalid: {e}");
                    Ok(UNPROVABLE)
                }
            }
        }
        Command::Play { formula: positional, formula_flag, interp, adversary, seed, stop, json } => {
            let f = formula(&positional.or(formula_flag).unwrap_or_default())?;
            let i = interpretation(&f, &interp)?;
            let proof = strategy_for(&f).map_err(strategy_failure)?;
            let mut adv: Box<dyn Adversary> = match adversary.as_str() {
                "random" => Box::new(RandomAdversary::new(seed.unwrap_or_else(default_seed), stop)),
                "stdin" => Box::new(StdinAdversary),
                other => {
                    let path = other.strip_prefix("script:").ok_or_else(|| Failure::usage(format!("unknown adversary `{other}`")))?;
                    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{path}: {e}")))?;
                    Box::new(ScriptedAdversary::new(text.lines().map(str::trim).filter(|l| !l.is_empty())))
                }
            };
            let p = playout(proof, Arc::new(i), adv.as_mut()).map_err(strategy_failure)?;
            if json {
                let value = json!({
                    "formula": f.to_string(),
                    "run": p.run,
                    "machine_moves": p.machine_moves,
                    "winner": p.winner,
                    "violations": p.violations,
                });
                let _ = writeln!(out, "{value}");
            } else {
                for m in &p.run {
                    let _ = writeln!(out, "{m}");
                }
                let _ = writeln!(out, "winner: {}", p.winner);
                for v in &p.violations {
                    let _ = writeln!(out, "violation: {v}");
                }
            }
            Ok(if p.violations.is_empty() && p.winner == Player::Top { OK } else { VIOLATION })
        }
        Command::Verify { formula: positional, formula_flag, interp_family, exhaustive: _, json } => {
            let f = formula(&positional.or(formula_flag).unwrap_or_default())?;
            let presets = family(&interp_family)?;
            let report = verify_all(&f, &Interpretation::family(&f, &presets)).map_err(strategy_failure)?;
            if json {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                let _ = writeln!(
                    out,
                    "{}: {} interpretations, {} branches, ⊤ won {}, ⊥ won {}, longest run {}",
                    report.formula, report.interpretations, report.branches, report.top_wins, report.bot_wins, report.max_run
                );
                for v in &report.violations {
                    let _ = writeln!(out, "violation under {}: {} at {}", v.interpretation, v.message, v.run);
                }
                let _ = writeln!(out, "{}", if report.passed() { "PASS" } else { "FAIL" });
            }
            Ok(if report.passed() { OK } else { VIOLATION })
        }
        Command::Refute { formula: text, m, out: path, budget_secs } => {
            let f = formula(&text)?;
            let budget = Budget { time: Some(Duration::from_secs(budget_secs)), ..Budget::default() };
            match refute_with(&f, m, budget).map_err(Failure::usage)? {
                Refutation::NotRefutable => {
                    let _ = writeln!(out, "not refutable: {f} is provable");
                    Ok(OK)
                }
                Refutation::Certificate(cert) => {
                    let text = cert.to_json();
                    if let Some(path) = path {
                        fs::write(&path, &text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
                    }
                    let _ = writeln!(out, "{text}");
                    if cert.holds() {
                        Ok(UNPROVABLE)
                    } else {
                        Err(Failure { code: VIOLATION, message: "certificate does not hold".into() })
                    }
                }
            }
        }
        Command::Lemmas { suite, cases, seed, json } => {
            let seed = seed.unwrap_or_else(default_seed);
            let reports = if suite == "all" {
                run_all(cases, seed)
            } else {
                vec![run_suite(suite.parse::<Suite>().map_err(Failure::usage)?, cases, seed)]
            };
            if json {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&reports).expect("reports serialize"));
            } else {
                for r in &reports {
                    match &r.reason {
                        None => {
                            let _ = writeln!(out, "PASS {} ({} cases, seed {})", r.suite, r.cases, r.seed);
                        }
                        Some(reason) => {
                            let _ = writeln!(out, "FAIL {} (seed {}): {reason}", r.suite, r.seed);
                            if let Some(c) = &r.counterexample {
                                let _ = writeln!(out, "counterexample:\n{c}");
                            }
                        }
                    }
                }
            }
            Ok(if reports.iter().all(|r| r.passed) { OK } else { VIOLATION })
        }
        Command::Serve { host, port, strict, idle_secs } => {
            let addr: SocketAddr =
                format!("{host}:{port}").parse().map_err(|e| Failure::usage(format!("bad address: {e}")))?;
            let config = service::Config { strict, idle: Duration::from_secs(idle_secs) };
            let rt = tokio::runtime::Runtime::new().map_err(Failure::usage)?;
            rt.block_on(service::serve(addr, config)).map_err(|e| Failure::usage(format!("serve: {e}")))?;
            Ok(OK)
        }
    }
}
