//! Recursive-descent parser for the ASCII formula syntax.
//!
//! Precedence, tightest first: `!`, the prefix temporal operators
//! (`X`, `F`, `G`, `F<=x`, `G<=y`), `U`/`R` (right-assoc), `&`, `|`,
//! `->` (right-assoc).

use super::{negate_nnf, Formula, FormulaError};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    Next,
    Eventually,
    Always,
    BoundedF(String),
    BoundedG(String),
    Until,
    Release,
    And,
    Or,
    Implies,
    LParen,
    RParen,
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_'
}

fn syntax(pos: usize, msg: impl Into<String>) -> FormulaError {
    FormulaError::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, FormulaError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let skip_ws = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_whitespace() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'!' => {
                i += 1;
                Tok::Not
            }
            b'&' => {
                i += 1;
                Tok::And
            }
            b'|' => {
                i += 1;
                Tok::Or
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Tok::Implies
            }
            c if is_ident_start(c) => {
                while i < bytes.len() && is_ident_char(bytes[i]) {
                    i += 1;
                }
                let word = &text[start..i];
                match word {
                    "F" | "G" if bytes[i..].starts_with(b"<=") => {
                        let j = skip_ws(i + 2);
                        if j >= bytes.len() || !is_ident_start(bytes[j]) {
                            return Err(syntax(j, format!("expected a variable after `{word}<=`")));
                        }
                        let mut k = j;
                        while k < bytes.len() && is_ident_char(bytes[k]) {
                            k += 1;
                        }
                        let var = text[j..k].to_string();
                        if is_keyword(&var) {
                            return Err(syntax(j, format!("`{var}` is reserved")));
                        }
                        i = k;
                        if word == "F" {
                            Tok::BoundedF(var)
                        } else {
                            Tok::BoundedG(var)
                        }
                    }
                    "X" => Tok::Next,
                    "F" => Tok::Eventually,
                    "G" => Tok::Always,
                    "U" => Tok::Until,
                    "R" => Tok::Release,
                    "tt" => Tok::True,
                    "ff" => Tok::False,
                    _ => Tok::Ident(word.to_string()),
                }
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(syntax(i, format!("unexpected character `{ch}`")));
            }
        };
        out.push((tok, start));
    }
    Ok(out)
}

fn is_keyword(word: &str) -> bool {
    matches!(word, "X" | "F" | "G" | "U" | "R" | "tt" | "ff")
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn implication(&mut self) -> Result<Formula, FormulaError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implication()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, FormulaError> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Tok::Or) {
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, FormulaError> {
        let mut lhs = self.binary_temporal()?;
        while self.eat(&Tok::And) {
            lhs = Formula::and(lhs, self.binary_temporal()?);
        }
        Ok(lhs)
    }

    fn binary_temporal(&mut self) -> Result<Formula, FormulaError> {
        let lhs = self.unary()?;
        if self.eat(&Tok::Until) {
            Ok(Formula::until(lhs, self.binary_temporal()?))
        } else if self.eat(&Tok::Release) {
            Ok(Formula::release(lhs, self.binary_temporal()?))
        } else {
            Ok(lhs)
        }
    }

    fn unary(&mut self) -> Result<Formula, FormulaError> {
        let at = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return Err(syntax(at, "unexpected end of formula"));
        };
        self.pos += 1;
        Ok(match tok {
            Tok::Not => negate_nnf(&self.unary()?),
            Tok::Next => Formula::next(self.unary()?),
            Tok::Eventually => Formula::eventually(self.unary()?),
            Tok::Always => Formula::always(self.unary()?),
            Tok::BoundedF(x) => Formula::BoundedF(x, Box::new(self.unary()?)),
            Tok::BoundedG(y) => Formula::BoundedG(y, Box::new(self.unary()?)),
            Tok::Ident(p) => Formula::Atom(p),
            Tok::True => Formula::True,
            Tok::False => Formula::False,
            Tok::LParen => {
                let inner = self.implication()?;
                if !self.eat(&Tok::RParen) {
                    return Err(syntax(self.offset(), "expected `)`"));
                }
                inner
            }
            other => return Err(syntax(at, format!("unexpected {}", describe(&other)))),
        })
    }
}

fn describe(tok: &Tok) -> &'static str {
    match tok {
        Tok::Until => "`U`",
        Tok::Release => "`R`",
        Tok::And => "`&`",
        Tok::Or => "`|`",
        Tok::Implies => "`->`",
        Tok::RParen => "`)`",
        _ => "token",
    }
}

/// Parses a formula and validates variable sorts. `!` may be applied to any
/// subformula; it is eliminated immediately so the result is in NNF.
pub fn parse_formula(text: &str) -> Result<Formula, FormulaError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let f = p.implication()?;
    if p.pos != p.toks.len() {
        return Err(syntax(p.offset(), "trailing input"));
    }
    f.check_sorts()?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounded_eventually() {
        assert_eq!(
            parse_formula("F<=x p").unwrap(),
            Formula::bounded_f("x", Formula::atom("p"))
        );
        assert_eq!(
            parse_formula("F <= x p").unwrap_err(),
            FormulaError::Syntax {
                pos: 2,
                msg: "unexpected character `<`".into()
            }
        );
        assert_eq!(parse_formula("F<= x p").unwrap(), parse_formula("F<=x p").unwrap());
    }

    #[test]
    fn negation_is_pushed_to_atoms() {
        assert_eq!(
            parse_formula("!(F<=x p)").unwrap(),
            Formula::bounded_g("x", Formula::neg_atom("p"))
        );
        assert_eq!(
            parse_formula("!(p U q)").unwrap(),
            Formula::release(Formula::neg_atom("p"), Formula::neg_atom("q"))
        );
        assert_eq!(parse_formula("!!p").unwrap(), Formula::atom("p"));
        assert_eq!(parse_formula("!tt").unwrap(), Formula::False);
    }

    #[test]
    fn desugaring() {
        let expected = Formula::release(
            Formula::False,
            Formula::or(
                Formula::neg_atom("q"),
                Formula::bounded_f("x", Formula::atom("p")),
            ),
        );
        assert_eq!(parse_formula("G(q -> F<=x p)").unwrap(), expected);
        assert_eq!(
            parse_formula("F p").unwrap(),
            Formula::until(Formula::True, Formula::atom("p"))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let p = || Formula::atom("p");
        let q = || Formula::atom("q");
        let r = || Formula::atom("r");
        // U binds tighter than &, and is right-associative
        assert_eq!(
            parse_formula("p & q U r").unwrap(),
            Formula::and(p(), Formula::until(q(), r()))
        );
        assert_eq!(
            parse_formula("p U q U r").unwrap(),
            Formula::until(p(), Formula::until(q(), r()))
        );
        // -> is right-associative and binds loosest
        assert_eq!(
            parse_formula("p -> q -> r").unwrap(),
            Formula::or(Formula::neg_atom("p"), Formula::or(Formula::neg_atom("q"), r()))
        );
        // prefix operators bind tighter than binary ones
        assert_eq!(
            parse_formula("X p U q").unwrap(),
            Formula::until(Formula::next(p()), q())
        );
        assert_eq!(
            parse_formula("p | q & r").unwrap(),
            Formula::or(p(), Formula::and(q(), r()))
        );
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_formula("p & ") {
            Err(FormulaError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        match parse_formula("(p | q") {
            Err(FormulaError::Syntax { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("unexpected {other:?}"),
        }
        match parse_formula("p q") {
            Err(FormulaError::Syntax { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_formula("F<=U p"), Err(FormulaError::Syntax { .. })));
        assert!(matches!(parse_formula("p # q"), Err(FormulaError::Syntax { pos: 2, .. })));
    }

    #[test]
    fn sort_clash_rejected() {
        assert_eq!(
            parse_formula("F<=x p & G<=x q").unwrap_err(),
            FormulaError::SortClash("x".into())
        );
        // negation flips F<=x into G<=x, which then clashes with the other F<=x
        assert_eq!(
            parse_formula("!(F<=x p) & F<=x q").unwrap_err(),
            FormulaError::SortClash("x".into())
        );
    }
}
