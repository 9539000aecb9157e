use super::{Formula, SyntaxError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    And,
    Or,
    Chand,
    Chor,
}

impl Op {
    fn symbol(self) -> &'static str {
        match self {
            Op::And => "&",
            Op::Or => "|",
            Op::Chand => "*",
            Op::Chor => "+",
        }
    }

    fn build(self, children: Vec<Formula>) -> Formula {
        match self {
            Op::And => Formula::And(children.into()),
            Op::Or => Formula::Or(children.into()),
            Op::Chand => Formula::Chand(children.into()),
            Op::Chor => Formula::Chor(children.into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Atom(Formula),
    Top,
    Bot,
    Not,
    Bin(Op),
    Arrow,
    LParen,
    RParen,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, SyntaxError> {
    Err(SyntaxError::Parse { pos, msg: msg.into() })
}

fn is_elem_name(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some('a'..='z')) && cs.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
}

fn is_general_name(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some('A'..='Z')) && cs.all(|c| c.is_ascii_uppercase() || c.is_ascii_digit())
}

/// `_P_a_b`, the reserved molecule-atom form.
pub(crate) fn is_reserved_name(s: &str) -> bool {
    let Some(rest) = s.strip_prefix('_') else { return false };
    let parts: Vec<&str> = rest.split('_').collect();
    parts.len() == 3
        && is_general_name(parts[0])
        && parts[1..].iter().all(|p| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit()))
}

fn classify_word(word: &str, pos: usize, reserved: bool) -> Result<Tok, SyntaxError> {
    match word {
        "tt" => return Ok(Tok::Top),
        "ff" => return Ok(Tok::Bot),
        _ => {}
    }
    if word.starts_with('_') {
        if reserved && is_reserved_name(word) {
            return Ok(Tok::Atom(Formula::elem(word)));
        }
        return err(pos, format!("reserved atom name `{word}`"));
    }
    if is_elem_name(word) {
        return Ok(Tok::Atom(Formula::elem(word)));
    }
    if is_general_name(word) {
        return Ok(Tok::Atom(Formula::general(word)));
    }
    if let Some((g, e)) = word.split_once('_') {
        if is_general_name(g) && is_elem_name(e) && e != "tt" && e != "ff" {
            return Ok(Tok::Atom(Formula::hybrid(g, e)));
        }
    }
    err(pos, format!("bad atom name `{word}`"))
}

fn lex(text: &str, reserved: bool) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let next = chars.get(i + 1).map(|&(_, c)| c);
        let single = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '~' | '¬' => Some(Tok::Not),
            '&' | '∧' => Some(Tok::Bin(Op::And)),
            '|' | '∨' => Some(Tok::Bin(Op::Or)),
            '*' | '⊓' => Some(Tok::Bin(Op::Chand)),
            '+' | '⊔' => Some(Tok::Bin(Op::Chor)),
            '→' => Some(Tok::Arrow),
            '⊤' => Some(Tok::Top),
            '⊥' => Some(Tok::Bot),
            _ => None,
        };
        if let Some(t) = single {
            out.push((pos, t));
            i += 1;
            continue;
        }
        let pair = match (c, next) {
            ('-', Some('>')) => Some(Tok::Arrow),
            ('\\', Some('/')) => Some(Tok::Bin(Op::Or)),
            ('/', Some('\\')) => Some(Tok::Bin(Op::And)),
            _ => None,
        };
        if let Some(t) = pair {
            out.push((pos, t));
            i += 2;
            continue;
        }
        if c.is_ascii_alphanumeric() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((pos, classify_word(&word, pos, reserved)?));
            continue;
        }
        return err(pos, format!("unexpected character `{c}`"));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn implication(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.chain()?;
        if self.peek() != Some(&Tok::Arrow) {
            return Ok(lhs);
        }
        self.at += 1;
        let rhs = self.chain()?;
        if self.peek() == Some(&Tok::Arrow) {
            return err(self.pos(), "nested `->` needs parentheses");
        }
        Ok(Formula::implies(lhs, rhs))
    }

    fn chain(&mut self) -> Result<Formula, SyntaxError> {
        let first = self.unary()?;
        let Some(&Tok::Bin(op)) = self.peek() else { return Ok(first) };
        let mut children = vec![first];
        while let Some(&Tok::Bin(next)) = self.peek() {
            if next != op {
                return err(
                    self.pos(),
                    format!("mixing `{}` and `{}` needs parentheses", op.symbol(), next.symbol()),
                );
            }
            self.at += 1;
            children.push(self.unary()?);
        }
        Ok(op.build(children))
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        let pos = self.pos();
        let Some(tok) = self.peek().cloned() else { return err(pos, "unexpected end of input") };
        self.at += 1;
        match tok {
            Tok::Not => Ok(Formula::neg(self.unary()?)),
            Tok::Atom(a) => Ok(a),
            Tok::Top => Ok(Formula::Top),
            Tok::Bot => Ok(Formula::Bot),
            Tok::LParen => {
                let inner = self.implication()?;
                if self.peek() != Some(&Tok::RParen) {
                    return err(self.pos(), "expected `)`");
                }
                self.at += 1;
                Ok(inner)
            }
            _ => err(pos, "expected a formula"),
        }
    }
}

fn parse_impl(text: &str, reserved: bool) -> Result<Formula, SyntaxError> {
    let toks = lex(text, reserved)?;
    let mut p = Parser { toks, at: 0, end: text.len() };
    let f = p.implication()?;
    if p.at != p.toks.len() {
        return err(p.pos(), "unexpected trailing input");
    }
    Ok(f)
}

/// Parses a formula in the ASCII or Unicode surface syntax.
///
/// ```
/// let f = cl2::syntax::parse("P \\/ ~P").unwrap();
/// assert_eq!(f.to_string(), "P | ~P");
/// ```
pub fn parse(text: &str) -> Result<Formula, SyntaxError> {
    parse_impl(text, false)
}

/// Like [`parse`] but also accepts reserved molecule atoms `_P_a_b`.
pub fn parse_with_reserved(text: &str) -> Result<Formula, SyntaxError> {
    parse_impl(text, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        let f = parse("P \\/ ~P").unwrap();
        assert_eq!(f, Formula::or(vec![Formula::general("P"), Formula::neg(Formula::general("P"))]));
        let f = parse("(p * Q) -> q").unwrap();
        assert_eq!(
            f,
            Formula::implies(Formula::chand(vec![Formula::elem("p"), Formula::general("Q")]), Formula::elem("q"))
        );
        let f = parse("P_q \\/ ~P_q").unwrap();
        assert_eq!(f, Formula::or(vec![Formula::hybrid("P", "q"), Formula::neg(Formula::hybrid("P", "q"))]));
    }

    #[test]
    fn unicode_and_ascii_agree() {
        let a = parse("(P & Q) | (R & S) -> (P | R) & (Q | S)").unwrap();
        let u = parse("(P ∧ Q) ∨ (R ∧ S) → (P ∨ R) ∧ (Q ∨ S)").unwrap();
        assert_eq!(a, u);
        assert_eq!(parse(&a.to_unicode()).unwrap(), a);
        assert_eq!(parse("⊤ ⊓ ⊥").unwrap(), parse("tt * ff").unwrap());
    }

    #[test]
    fn chains_and_parentheses() {
        assert!(matches!(parse("p & q & r").unwrap(), Formula::And(cs) if cs.len() == 3));
        assert!(matches!(parse("(p & q) & r").unwrap(), Formula::And(cs) if cs.len() == 2));
        assert!(parse("p & q | r").is_err());
        assert!(parse("p -> q -> r").is_err());
        assert!(parse("p -> (q -> r)").is_ok());
        assert!(parse("~~p").is_ok());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("p & "), Err(SyntaxError::Parse { pos: 4, msg: "unexpected end of input".into() }));
        assert!(matches!(parse("p $ q"), Err(SyntaxError::Parse { pos: 2, .. })));
        assert!(matches!(parse("(p & q"), Err(SyntaxError::Parse { pos: 6, .. })));
    }

    #[test]
    fn atom_names() {
        assert!(parse("tt").is_ok());
        assert!(parse("Pq").is_err());
        assert!(parse("p_q").is_err());
        assert!(parse("P_Q").is_err());
        assert!(parse("_P_1_2").is_err());
        assert_eq!(parse_with_reserved("_P_1_2").unwrap(), Formula::elem("_P_1_2"));
        assert!(parse("P1 & p2").is_ok());
    }

    #[test]
    fn render_round_trip() {
        for s in [
            "P | ~P",
            "~(p & q) -> ~~r",
            "p * Q -> q",
            "((p | q) | r) & (P + Q + R)",
            "(p -> q) -> r",
            "~tt | ff",
            "P_q | ~P_q",
        ] {
            let f = parse(s).unwrap();
            assert_eq!(f.to_string(), s);
            assert_eq!(parse(&f.to_string()).unwrap(), f);
        }
    }
}
