use std::fmt::{self, Write as _};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{GameError, LabeledMove, Player, Run};
use crate::syntax::{parse_choice, split_index};

/// A finite constant game, kept as an interpreted-formula tree.
///
/// Moves use the same dotted addressing as formulas: `i.` enters the i-th
/// component of `And`/`Or`, `Neg` is transparent and swaps roles, and a
/// choice node is resolved by the bare index `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Game {
    Triv(Player),
    Neg(Arc<Game>),
    And(Arc<[Game]>),
    Or(Arc<[Game]>),
    Chand(Arc<[Game]>),
    Chor(Arc<[Game]>),
}

impl Game {
    pub const TOP: Game = Game::Triv(Player::Top);
    pub const BOT: Game = Game::Triv(Player::Bot);

    pub fn neg(g: Game) -> Game {
        Game::Neg(Arc::new(g))
    }

    pub fn and(cs: Vec<Game>) -> Game {
        Game::And(cs.into())
    }

    pub fn or(cs: Vec<Game>) -> Game {
        Game::Or(cs.into())
    }

    pub fn chand(cs: Vec<Game>) -> Game {
        Game::Chand(cs.into())
    }

    pub fn chor(cs: Vec<Game>) -> Game {
        Game::Chor(cs.into())
    }

    pub fn children(&self) -> &[Game] {
        match self {
            Game::Triv(_) => &[],
            Game::Neg(a) => std::slice::from_ref(&**a),
            Game::And(cs) | Game::Or(cs) | Game::Chand(cs) | Game::Chor(cs) => cs,
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(Game::size).sum::<usize>()
    }

    /// Number of choice nodes; bounds the length of any legal run.
    pub fn choice_count(&self) -> usize {
        let own = usize::from(matches!(self, Game::Chand(_) | Game::Chor(_)));
        own + self.children().iter().map(Game::choice_count).sum::<usize>()
    }

    /// The game after `player` makes `mv`, or why the move is illegal.
    pub fn apply(&self, player: Player, mv: &str) -> Result<Game, String> {
        match self {
            Game::Triv(_) => Err("no moves are available in an elementary game".into()),
            Game::Neg(a) => Ok(Game::neg(a.apply(player.flip(), mv)?)),
            Game::And(cs) | Game::Or(cs) => {
                let (i, rest) = split_index(mv).ok_or_else(|| format!("`{mv}` does not select a component"))?;
                let k = i as usize - 1;
                let child = cs.get(k).ok_or_else(|| format!("no component {i}"))?;
                let mut kids = cs.to_vec();
                kids[k] = child.apply(player, rest)?;
                Ok(match self {
                    Game::And(_) => Game::And(kids.into()),
                    _ => Game::Or(kids.into()),
                })
            }
            Game::Chand(cs) | Game::Chor(cs) => {
                let owner = if matches!(self, Game::Chand(_)) { Player::Bot } else { Player::Top };
                let i = parse_choice(mv).ok_or_else(|| format!("`{mv}` is not a choice index"))?;
                if player != owner {
                    return Err("the choice belongs to the other player".into());
                }
                cs.get(i - 1).cloned().ok_or_else(|| format!("no component {i}"))
            }
        }
    }

    /// `⟨Φ⟩A`: the game after the moves of `run`.
    pub fn prefix(&self, run: &[LabeledMove]) -> Result<Game, GameError> {
        let mut g = self.clone();
        for (index, m) in run.iter().enumerate() {
            g = g.apply(m.player, &m.mv).map_err(|reason| GameError::IllegalMove {
                index,
                player: m.player,
                mv: m.mv.clone(),
                reason,
            })?;
        }
        Ok(g)
    }

    pub fn is_legal_move(&self, m: &LabeledMove) -> bool {
        self.apply(m.player, &m.mv).is_ok()
    }

    /// Every one-move legal extension, left to right.
    pub fn legal_moves(&self) -> Vec<LabeledMove> {
        fn go(g: &Game, flipped: bool, prefix: &mut String, out: &mut Vec<LabeledMove>) {
            match g {
                Game::Triv(_) => {}
                Game::Neg(a) => go(a, !flipped, prefix, out),
                Game::And(cs) | Game::Or(cs) => {
                    for (i, c) in cs.iter().enumerate() {
                        let len = prefix.len();
                        let _ = write!(prefix, "{}.", i + 1);
                        go(c, flipped, prefix, out);
                        prefix.truncate(len);
                    }
                }
                Game::Chand(cs) | Game::Chor(cs) => {
                    let owner = if matches!(g, Game::Chand(_)) { Player::Bot } else { Player::Top };
                    let owner = if flipped { owner.flip() } else { owner };
                    for i in 1..=cs.len() {
                        out.push(LabeledMove::new(owner, format!("{prefix}{i}")));
                    }
                }
            }
        }
        let mut out = Vec::new();
        go(self, false, &mut String::new(), &mut out);
        out
    }

    /// Winner of the empty run: the value of the finalized game.
    pub fn value(&self) -> Player {
        match self {
            Game::Triv(p) => *p,
            Game::Chand(_) => Player::Top,
            Game::Chor(_) => Player::Bot,
            Game::Neg(a) => a.value().flip(),
            Game::And(cs) => Player::from_bool(cs.iter().all(|c| c.value().is_top())),
            Game::Or(cs) => Player::from_bool(cs.iter().any(|c| c.value().is_top())),
        }
    }

    /// Index and offender of the first illegal move of `run`, if any.
    pub fn first_illegal(&self, run: &[LabeledMove]) -> Option<(usize, Player)> {
        match self.prefix(run) {
            Ok(_) => None,
            Err(GameError::IllegalMove { index, player, .. }) => Some((index, player)),
            Err(_) => unreachable!("prefix only reports illegal moves"),
        }
    }

    /// Who wins `run`: the offended player if someone moved illegally,
    /// otherwise the value of the residual game.
    pub fn winner(&self, run: &[LabeledMove]) -> Player {
        match self.prefix(run) {
            Ok(g) => g.value(),
            Err(GameError::IllegalMove { player, .. }) => player.flip(),
            Err(_) => unreachable!("prefix only reports illegal moves"),
        }
    }

    /// `⟨Γ⟩↓A` as a trivial game.
    pub fn finalize(&self, run: &[LabeledMove]) -> Game {
        Game::Triv(self.winner(run))
    }

    /// All legal runs (every legal position), depth first.
    pub fn legal_runs(&self) -> Vec<Run> {
        fn go(g: &Game, run: &mut Run, out: &mut Vec<Run>) {
            out.push(run.clone());
            for m in g.legal_moves() {
                let next = g.apply(m.player, &m.mv).expect("listed move is legal");
                run.push(m);
                go(&next, run, out);
                run.pop();
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn to_term(&self) -> GameTerm {
        let kids = |cs: &[Game]| cs.iter().map(Game::to_term).collect();
        match self {
            Game::Triv(p) => GameTerm { op: "triv".into(), children: vec![], value: Some(*p) },
            Game::Neg(a) => GameTerm { op: "neg".into(), children: vec![a.to_term()], value: None },
            Game::And(cs) => GameTerm { op: "and".into(), children: kids(cs), value: None },
            Game::Or(cs) => GameTerm { op: "or".into(), children: kids(cs), value: None },
            Game::Chand(cs) => GameTerm { op: "chand".into(), children: kids(cs), value: None },
            Game::Chor(cs) => GameTerm { op: "chor".into(), children: kids(cs), value: None },
        }
    }

    pub fn from_term(t: &GameTerm) -> Result<Game, GameError> {
        let bad = |msg: &str| GameError::BadInterpretation(msg.to_string());
        let kids = || t.children.iter().map(Game::from_term).collect::<Result<Vec<_>, _>>();
        let g = match t.op.as_str() {
            "triv" => Game::Triv(t.value.ok_or_else(|| bad("`triv` needs a value"))?),
            "neg" => {
                let mut k = kids()?;
                if k.len() != 1 {
                    return Err(bad("`neg` takes exactly one child"));
                }
                Game::neg(k.remove(0))
            }
            op @ ("and" | "or" | "chand" | "chor") => {
                let k = kids()?;
                if k.is_empty() {
                    return Err(bad("connective without children"));
                }
                match op {
                    "and" => Game::and(k),
                    "or" => Game::or(k),
                    "chand" => Game::chand(k),
                    _ => Game::chor(k),
                }
            }
            other => return Err(bad(&format!("unknown op `{other}`"))),
        };
        Ok(g)
    }
}

/// JSON form of a game: `{"op": "chand", "children": [...]}` or
/// `{"op": "triv", "value": "T"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameTerm {
    pub op: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<GameTerm>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "truth_value")]
    pub value: Option<Player>,
}

/// Trivial-game values are written `"T"` / `"F"`.
mod truth_value {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Player;

    pub fn serialize<S: Serializer>(v: &Option<Player>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(Player::Top) => s.serialize_str("T"),
            Some(Player::Bot) => s.serialize_str("F"),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Player>, D::Error> {
        let v: Option<String> = Option::deserialize(d)?;
        match v.as_deref() {
            None => Ok(None),
            Some("T") => Ok(Some(Player::Top)),
            Some("F") => Ok(Some(Player::Bot)),
            Some(other) => Err(serde::de::Error::custom(format!("expected \"T\" or \"F\", got `{other}`"))),
        }
    }
}

impl fmt::Display for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, sym: &str, cs: &[Game]| {
            write!(f, "{sym}(")?;
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str(")")
        };
        match self {
            Game::Triv(p) => write!(f, "{p}"),
            Game::Neg(a) => write!(f, "¬{a}"),
            Game::And(cs) => list(f, "∧", cs),
            Game::Or(cs) => list(f, "∨", cs),
            Game::Chand(cs) => list(f, "⊓", cs),
            Game::Chor(cs) => list(f, "⊔", cs),
        }
    }
}

impl fmt::Debug for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chand_tb() -> Game {
        Game::chand(vec![Game::TOP, Game::BOT])
    }

    #[test]
    fn legal_move_examples() {
        let g = Game::chor(vec![Game::TOP, Game::BOT]);
        assert_eq!(g.legal_moves(), vec![LabeledMove::top("1"), LabeledMove::top("2")]);
        let em = Game::or(vec![chand_tb(), Game::neg(chand_tb())]);
        assert_eq!(
            em.legal_moves(),
            vec![LabeledMove::bot("1.1"), LabeledMove::bot("1.2"), LabeledMove::top("2.1"), LabeledMove::top("2.2")]
        );
        assert!(Game::TOP.legal_moves().is_empty());
    }

    #[test]
    fn prefix_examples() {
        let a = Game::chor(vec![Game::TOP, Game::BOT]);
        let g = Game::chand(vec![a.clone(), Game::BOT]);
        assert_eq!(g.prefix(&[LabeledMove::bot("1")]).unwrap(), a);
        let n = Game::neg(chand_tb());
        assert_eq!(n.prefix(&[LabeledMove::top("2")]).unwrap(), Game::neg(Game::BOT));
        let err = n.prefix(&[LabeledMove::bot("2")]).unwrap_err();
        assert!(matches!(err, GameError::IllegalMove { index: 0, player: Player::Bot, .. }));
    }

    #[test]
    fn winner_examples() {
        let g = Game::chor(vec![Game::TOP, Game::BOT]);
        assert_eq!(g.winner(&[]), Player::Bot);
        assert_eq!(g.winner(&[LabeledMove::top("1")]), Player::Top);
        assert_eq!(chand_tb().winner(&[LabeledMove::top("1")]), Player::Bot);
        assert_eq!(chand_tb().winner(&[]), Player::Top);
        assert_eq!(chand_tb().winner(&[LabeledMove::bot("2"), LabeledMove::top("1")]), Player::Bot);
    }

    #[test]
    fn move_syntax_is_strict() {
        let g = Game::or(vec![chand_tb(), Game::TOP]);
        assert!(g.apply(Player::Bot, "1.").is_err());
        assert!(g.apply(Player::Bot, "01.1").is_err());
        assert!(g.apply(Player::Bot, "1.1.").is_err());
        assert!(g.apply(Player::Bot, "3.1").is_err());
        assert!(g.apply(Player::Bot, "1.3").is_err());
        assert!(g.apply(Player::Top, "2.1").is_err());
    }

    #[test]
    fn term_round_trip() {
        let g = Game::chor(vec![Game::and(vec![chand_tb(), Game::TOP]), Game::neg(Game::chand(vec![Game::BOT, Game::TOP]))]);
        let json = serde_json::to_string(&g.to_term()).unwrap();
        assert!(json.contains(r#""op":"chor""#));
        assert!(json.contains(r#""value":"F""#));
        let back: GameTerm = serde_json::from_str(&json).unwrap();
        assert_eq!(Game::from_term(&back).unwrap(), g);
    }

    #[test]
    fn legal_runs_are_complete() {
        let em = Game::or(vec![chand_tb(), Game::neg(chand_tb())]);
        // 1 + 4 + 4*2 positions
        assert_eq!(em.legal_runs().len(), 13);
    }
}
