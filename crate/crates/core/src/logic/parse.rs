//! Recursive-descent parser for the ASCII formula grammar.
//!
//! ```text
//! iff     := imp ( "<->" imp )*
//! imp     := or ( "->" imp )?
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := "~" unary | primary
//! primary := IDENT | "true" | "false" | "(" iff ")"
//! IDENT   := [A-Za-z_][A-Za-z0-9_']*
//! ```

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::logic::Formula;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("identifier `{name}`"),
            Tok::True => "`true`".to_string(),
            Tok::False => "`false`".to_string(),
            Tok::Not => "`~`".to_string(),
            Tok::And => "`&`".to_string(),
            Tok::Or => "`|`".to_string(),
            Tok::Implies => "`->`".to_string(),
            Tok::Iff => "`<->`".to_string(),
            Tok::LParen => "`(`".to_string(),
            Tok::RParen => "`)`".to_string(),
        }
    }
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Parse { position, message: message.into() }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let tok = match c {
            '~' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '-' => {
                chars.next();
                match chars.peek() {
                    Some(&(_, '>')) => Tok::Implies,
                    _ => return Err(syntax(pos, "expected `->`")),
                }
            }
            '<' => {
                chars.next();
                let dash = matches!(chars.next(), Some((_, '-')));
                let gt = matches!(chars.peek(), Some(&(_, '>')));
                if !(dash && gt) {
                    return Err(syntax(pos, "expected `<->`"));
                }
                Tok::Iff
            }
            c if is_ident_start(c) => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if !is_ident_continue(c) {
                        break;
                    }
                    name.push(c);
                    chars.next();
                }
                let tok = match name.as_str() {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    _ => Tok::Ident(name),
                };
                out.push((pos, tok));
                continue;
            }
            other => return Err(syntax(pos, format!("unexpected character `{other}`"))),
        };
        chars.next();
        out.push((pos, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    next: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.next).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.toks.get(self.next).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.next += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut lhs = self.imp()?;
        while self.eat(&Tok::Iff) {
            let rhs = self.imp()?;
            lhs = Formula::equivalence(lhs, rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.imp()?;
            return Ok(Formula::implication(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            let rhs = self.and()?;
            lhs = Formula::disjunction(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            let rhs = self.unary()?;
            lhs = Formula::conjunction(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat(&Tok::Not) {
            return Ok(Formula::negation(self.unary()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula> {
        let pos = self.position();
        let Some((_, tok)) = self.toks.get(self.next).cloned() else {
            return Err(syntax(pos, "unexpected end of input"));
        };
        self.next += 1;
        match tok {
            Tok::Ident(name) => Ok(Formula::Atom(name)),
            Tok::True => Ok(Formula::Verum),
            Tok::False => Ok(Formula::Falsum),
            Tok::LParen => {
                let inner = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return Err(syntax(self.position(), "expected `)`"));
                }
                Ok(inner)
            }
            other => Err(syntax(pos, format!("unexpected {}", other.describe()))),
        }
    }
}

/// Parses a formula; precedence from tightest is `~`, `&`, `|`, `->`, `<->`.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, next: 0, end: text.len() };
    let f = parser.iff()?;
    if let Some(tok) = parser.peek() {
        let msg = format!("unexpected {} after complete formula", tok.describe());
        return Err(syntax(parser.position(), msg));
    }
    Ok(f)
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_formula(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: &str) -> Formula {
        Formula::atom(n)
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(parse_formula("A & B").unwrap(), a("A") & a("B"));
        assert_eq!(parse_formula("~~B").unwrap(), !!a("B"));
        assert_eq!(
            parse_formula("A -> B -> C").unwrap(),
            Formula::implication(a("A"), Formula::implication(a("B"), a("C")))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse_formula("~A & B | C -> D <-> E").unwrap(),
            Formula::equivalence(Formula::implication((!a("A") & a("B")) | a("C"), a("D")), a("E"))
        );
        assert_eq!(parse_formula("A & B & C").unwrap(), (a("A") & a("B")) & a("C"));
        assert_eq!(parse_formula("A | B | C").unwrap(), (a("A") | a("B")) | a("C"));
        assert_eq!(
            parse_formula("A <-> B <-> C").unwrap(),
            Formula::equivalence(Formula::equivalence(a("A"), a("B")), a("C"))
        );
        assert_eq!(parse_formula(" ( A ) ").unwrap(), a("A"));
        assert_eq!(parse_formula("true|false").unwrap(), Formula::Verum | Formula::Falsum);
        assert_eq!(parse_formula("A'_1").unwrap(), a("A'_1"));
    }

    #[test]
    fn errors_carry_positions() {
        let pos = |s: &str| match parse_formula(s) {
            Err(Error::Parse { position, .. }) => position,
            other => panic!("expected parse error for {s:?}, got {other:?}"),
        };
        assert_eq!(pos(""), 0);
        assert_eq!(pos("A &"), 3);
        assert_eq!(pos("A B"), 2);
        assert_eq!(pos("(A"), 2);
        assert_eq!(pos("A - B"), 2);
        assert_eq!(pos("A <= B"), 2);
        assert_eq!(pos("A $ B"), 2);
        assert_eq!(pos(")"), 0);
        assert_eq!(pos("'A"), 0);
    }
}
