use std::collections::BTreeMap;
use std::fmt;

use serde_json::Value;

use super::{Game, GameError, GameTerm, Player};
use crate::syntax::{Formula, Name};

/// A perfect interpretation: every atom is a constant game.
/// Hybrid atoms are read through their general component.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Interpretation {
    pub elementary: BTreeMap<Name, Player>,
    pub general: BTreeMap<Name, Game>,
}

/// `F*`, with `G → H` read as `¬G* ∨ H*`.
pub fn interpret(f: &Formula, i: &Interpretation) -> Result<Game, GameError> {
    let all = |cs: &[Formula]| cs.iter().map(|c| interpret(c, i)).collect::<Result<Vec<_>, _>>();
    Ok(match f {
        Formula::Top => Game::TOP,
        Formula::Bot => Game::BOT,
        Formula::Elem(p) => Game::Triv(*i.elementary.get(p).ok_or_else(|| GameError::Unmapped(p.clone()))?),
        Formula::General(p) | Formula::Hybrid { general: p, .. } => {
            i.general.get(p).cloned().ok_or_else(|| GameError::Unmapped(p.clone()))?
        }
        Formula::Neg(a) => Game::neg(interpret(a, i)?),
        Formula::Implies(a, b) => Game::or(vec![Game::neg(interpret(a, i)?), interpret(b, i)?]),
        Formula::And(cs) => Game::and(all(cs)?),
        Formula::Or(cs) => Game::or(all(cs)?),
        Formula::Chand(cs) => Game::chand(all(cs)?),
        Formula::Chor(cs) => Game::chor(all(cs)?),
    })
}

/// `(A11 ⊔ … ⊔ A1m) ⊓ … ⊓ (Am1 ⊔ … ⊔ Amm)` over trivial games, `leaves` given row-major.
pub fn molecule(m: usize, leaves: &[Player]) -> Game {
    assert_eq!(leaves.len(), m * m, "molecule needs m*m leaves");
    Game::chand(leaves.chunks(m).map(|row| Game::chor(row.iter().map(|&p| Game::Triv(p)).collect())).collect())
}

fn parse_leaves(s: &str) -> Option<Vec<Player>> {
    s.chars()
        .map(|c| match c {
            'T' | '1' => Some(Player::Top),
            'F' | 'B' | '0' => Some(Player::Bot),
            _ => None,
        })
        .collect()
}

/// Parses `molecule(m=2,leaves=TF)`; a pattern of length `m` is used for every
/// row, one of length `m*m` is read row-major.
fn parse_molecule_spec(s: &str) -> Result<Game, GameError> {
    let bad = || GameError::BadInterpretation(format!("bad molecule spec `{s}`"));
    let body = s.trim().strip_prefix("molecule(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
    let mut m = None;
    let mut leaves = None;
    for part in body.split(',') {
        match part.trim().split_once('=') {
            Some(("m", v)) => m = Some(v.trim().parse::<usize>().map_err(|_| bad())?),
            Some(("leaves", v)) => leaves = Some(parse_leaves(v.trim()).ok_or_else(bad)?),
            _ => return Err(bad()),
        }
    }
    let m = m.filter(|&m| m >= 1).ok_or_else(bad)?;
    let leaves = leaves.unwrap_or_else(|| vec![Player::Top; m]);
    let full = if leaves.len() == m {
        leaves.iter().copied().cycle().take(m * m).collect()
    } else if leaves.len() == m * m {
        leaves
    } else {
        return Err(bad());
    };
    Ok(molecule(m, &full))
}

fn player_from_json(v: &str) -> Option<Player> {
    match v {
        "T" | "t" | "⊤" | "true" => Some(Player::Top),
        "F" | "f" | "B" | "⊥" | "false" => Some(Player::Bot),
        _ => None,
    }
}

impl Interpretation {
    pub fn new() -> Interpretation {
        Interpretation::default()
    }

    pub fn with_elem(mut self, name: &str, value: Player) -> Self {
        self.elementary.insert(name.into(), value);
        self
    }

    pub fn with_general(mut self, name: &str, game: Game) -> Self {
        self.general.insert(name.into(), game);
        self
    }

    /// True iff every atom of `f` is interpreted.
    pub fn covers(&self, f: &Formula) -> bool {
        f.elem_atoms().iter().all(|p| self.elementary.contains_key(p))
            && f.general_names().iter().all(|p| self.general.contains_key(p))
    }

    /// Reads the interpretation file format:
    /// `{"elementary": {"p": "T"}, "general": {"P": <game term> | "molecule(m=2,leaves=TF)"}}`.
    pub fn from_json(text: &str) -> Result<Interpretation, GameError> {
        let v: Value = serde_json::from_str(text).map_err(|e| GameError::BadInterpretation(e.to_string()))?;
        Interpretation::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Interpretation, GameError> {
        let bad = |m: String| GameError::BadInterpretation(m);
        let obj = v.as_object().ok_or_else(|| bad("expected a JSON object".into()))?;
        let mut out = Interpretation::new();
        if let Some(el) = obj.get("elementary") {
            for (k, val) in el.as_object().ok_or_else(|| bad("`elementary` must be an object".into()))? {
                let p = val
                    .as_str()
                    .and_then(player_from_json)
                    .or_else(|| val.as_bool().map(Player::from_bool))
                    .ok_or_else(|| bad(format!("bad value for `{k}`")))?;
                out.elementary.insert(k.as_str().into(), p);
            }
        }
        if let Some(gen) = obj.get("general") {
            for (k, val) in gen.as_object().ok_or_else(|| bad("`general` must be an object".into()))? {
                let g = match val {
                    Value::String(s) => match Preset::from_name(s) {
                        Some(p) => p.game(),
                        None => parse_molecule_spec(s)?,
                    },
                    other => {
                        let term: GameTerm = serde_json::from_value(other.clone()).map_err(|e| bad(e.to_string()))?;
                        Game::from_term(&term)?
                    }
                };
                out.general.insert(k.as_str().into(), g);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let elementary: serde_json::Map<String, Value> = self
            .elementary
            .iter()
            .map(|(k, v)| (k.to_string(), Value::from(if v.is_top() { "T" } else { "F" })))
            .collect();
        let general: serde_json::Map<String, Value> = self
            .general
            .iter()
            .map(|(k, g)| (k.to_string(), serde_json::to_value(g.to_term()).expect("term serializes")))
            .collect();
        serde_json::json!({ "elementary": elementary, "general": general })
    }

    /// Every interpretation of `f`'s atoms that assigns elementary atoms any
    /// truth values and gives every general atom the same preset game.
    pub fn family(f: &Formula, presets: &[Preset]) -> Vec<(String, Interpretation)> {
        let elems: Vec<Name> = f.elem_atoms().into_iter().collect();
        let gens: Vec<Name> = f.general_names().into_iter().collect();
        let presets: Vec<Option<&Preset>> =
            if gens.is_empty() { vec![None] } else { presets.iter().map(Some).collect() };
        let mut out = Vec::new();
        for preset in presets {
            for bits in 0u64..(1 << elems.len()) {
                let mut i = Interpretation::new();
                let mut label = Vec::new();
                for (k, e) in elems.iter().enumerate() {
                    let v = Player::from_bool(bits >> k & 1 == 1);
                    i.elementary.insert(e.clone(), v);
                    label.push(format!("{e}={}", if v.is_top() { "T" } else { "F" }));
                }
                if let Some(p) = preset {
                    for g in &gens {
                        i.general.insert(g.clone(), p.game());
                    }
                    label.push(format!("general={p}"));
                }
                out.push((label.join(" "), i));
            }
        }
        out
    }
}

/// Named games used to interpret general atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// Single-row molecule with the given leaf.
    Molecule1(bool),
    /// 2×2 molecule; each row is the leaf pair.
    Molecule2(bool, bool),
    /// `⊤ ⊓ (⊥ ⊔ ⊤)`
    Irregular1,
    /// `((⊤ ⊓ ⊥) ∧ ⊤) ⊔ ¬(⊥ ⊓ ⊤)`
    Irregular2,
}

impl Preset {
    /// Molecules with m = 1 and m = 2 under every leaf pattern, plus both irregular games.
    pub fn standard() -> Vec<Preset> {
        let mut v = vec![Preset::Molecule1(true), Preset::Molecule1(false)];
        v.extend(Preset::molecules2());
        v.extend([Preset::Irregular1, Preset::Irregular2]);
        v
    }

    pub fn molecules2() -> Vec<Preset> {
        vec![
            Preset::Molecule2(true, true),
            Preset::Molecule2(true, false),
            Preset::Molecule2(false, true),
            Preset::Molecule2(false, false),
        ]
    }

    pub fn game(&self) -> Game {
        let t = |b: bool| Player::from_bool(b);
        match *self {
            Preset::Molecule1(a) => molecule(1, &[t(a)]),
            Preset::Molecule2(a, b) => molecule(2, &[t(a), t(b), t(a), t(b)]),
            Preset::Irregular1 => Game::chand(vec![Game::TOP, Game::chor(vec![Game::BOT, Game::TOP])]),
            Preset::Irregular2 => Game::chor(vec![
                Game::and(vec![Game::chand(vec![Game::TOP, Game::BOT]), Game::TOP]),
                Game::neg(Game::chand(vec![Game::BOT, Game::TOP])),
            ]),
        }
    }

    pub fn from_name(s: &str) -> Option<Preset> {
        Preset::standard().into_iter().find(|p| p.to_string() == s)
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |b: bool| if b { 'T' } else { 'F' };
        match *self {
            Preset::Molecule1(a) => write!(f, "molecule(m=1,leaves={})", c(a)),
            Preset::Molecule2(a, b) => write!(f, "molecule(m=2,leaves={}{})", c(a), c(b)),
            Preset::Irregular1 => f.write_str("irregular1"),
            Preset::Irregular2 => f.write_str("irregular2"),
        }
    }
}
