use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::SyntaxError;

/// Sign of an occurrence: even (positive) or odd (negative) number of
/// enclosing negations, counting implication antecedents as negations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Polarity::Positive
    }
}

/// Dotted address of a surface occurrence, e.g. `1.2.`; the empty path
/// addresses the root.
///
/// Only `And`/`Or`/`Implies` contribute an index; negation is transparent.
/// The same string is the prefix of every move made inside the occurrence.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpecPath(Vec<u32>);

impl SpecPath {
    pub fn root() -> Self {
        SpecPath(Vec::new())
    }

    pub fn from_indices(indices: impl IntoIterator<Item = u32>) -> Self {
        SpecPath(indices.into_iter().collect())
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, index: u32) -> SpecPath {
        let mut v = self.0.clone();
        v.push(index);
        SpecPath(v)
    }

    /// `self` followed by the choice index, as a move string (`1.2.` + 3 = `1.2.3`).
    pub fn choice_move(&self, index: usize) -> String {
        format!("{self}{index}")
    }

    /// Move string `self ++ suffix`.
    pub fn prefix_move(&self, suffix: &str) -> String {
        format!("{self}{suffix}")
    }

    /// If `mv` starts with this path, the remaining suffix.
    pub fn strip_from<'a>(&self, mv: &'a str) -> Option<&'a str> {
        let mut rest = mv;
        for &i in &self.0 {
            let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
            if rest[..digits].parse::<u32>().ok() != Some(i) || rest[..digits].starts_with('0') {
                return None;
            }
            rest = rest[digits..].strip_prefix('.')?;
        }
        Some(rest)
    }
}

impl fmt::Display for SpecPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.0 {
            write!(f, "{i}.")?;
        }
        Ok(())
    }
}

impl FromStr for SpecPath {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "ε" {
            return Ok(SpecPath::root());
        }
        let body = s.strip_suffix('.').ok_or_else(|| SyntaxError::BadSpec(s.to_string()))?;
        let mut out = Vec::new();
        for part in body.split('.') {
            let n: u32 = part.parse().map_err(|_| SyntaxError::BadSpec(s.to_string()))?;
            if n == 0 {
                return Err(SyntaxError::BadSpec(s.to_string()));
            }
            out.push(n);
        }
        Ok(SpecPath(out))
    }
}

impl Serialize for SpecPath {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SpecPath {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Splits a leading `<n>.` off a move string.
pub(crate) fn split_index(mv: &str) -> Option<(u32, &str)> {
    let dot = mv.find('.')?;
    let n = parse_choice(&mv[..dot])?;
    Some((u32::try_from(n).ok()?, &mv[dot + 1..]))
}

/// Parses a whole move string as a choice index `n`.
pub(crate) fn parse_choice(mv: &str) -> Option<usize> {
    if mv.is_empty() || mv.starts_with('0') || !mv.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    match mv.parse::<usize>() {
        Ok(0) | Err(_) => None,
        Ok(n) => Some(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trip() {
        for s in ["", "1.", "1.2.", "12.3.1."] {
            let p: SpecPath = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert!("1.2".parse::<SpecPath>().is_err());
        assert!("0.".parse::<SpecPath>().is_err());
        assert!("a.".parse::<SpecPath>().is_err());
    }

    #[test]
    fn move_helpers() {
        let p: SpecPath = "1.2.".parse().unwrap();
        assert_eq!(p.choice_move(3), "1.2.3");
        assert_eq!(p.strip_from("1.2.1.4"), Some("1.4"));
        assert_eq!(p.strip_from("1.1"), None);
        assert_eq!(split_index("12.3"), Some((12, "3")));
        assert_eq!(split_index("3"), None);
        assert_eq!(parse_choice("2"), Some(2));
        assert_eq!(parse_choice("2.1"), None);
        assert_eq!(parse_choice("0"), None);
        assert_eq!(parse_choice("01"), None);
        assert_eq!(split_index("01.2"), None);
    }
}
