//! Parser for polynomial text.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' INTEGER)?
//! atom   := INTEGER ('/' INTEGER)? | IDENT | '(' expr ')'
//! ```

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::poly::{Polynomial, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownVariable(String),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(f, "line {}, column {}: {}", self.line, self.column, msg),
            ParseErrorKind::UnknownVariable(v) => {
                write!(f, "line {}, column {}: unknown variable '{}'", self.line, self.column, v)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    text: &'a str,
    tokens: Vec<(Tok, usize)>,
}

impl<'a> Lexer<'a> {
    fn run(text: &'a str) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut lx = Lexer { text, tokens: Vec::new() };
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            let start = i;
            let tok = match c {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    i += 1;
                    continue;
                }
                b'+' => Tok::Plus,
                b'-' => Tok::Minus,
                b'*' => Tok::Star,
                b'/' => Tok::Slash,
                b'^' => Tok::Caret,
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'0'..=b'9' => {
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    lx.tokens.push((Tok::Int(text[start..i].parse().expect("digits")), start));
                    continue;
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                        i += 1;
                    }
                    lx.tokens.push((Tok::Ident(text[start..i].to_string()), start));
                    continue;
                }
                _ => {
                    let ch = text[start..].chars().next().unwrap();
                    return Err(lx.error(start, ParseErrorKind::Syntax(format!("unexpected character '{ch}'"))));
                }
            };
            lx.tokens.push((tok, start));
            i += 1;
        }
        lx.tokens.push((Tok::End, text.len()));
        Ok(lx.tokens)
    }

    fn error(&self, offset: usize, kind: ParseErrorKind) -> ParseError {
        position_error(self.text, offset, kind)
    }
}

fn position_error(text: &str, offset: usize, kind: ParseErrorKind) -> ParseError {
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.chars().count(), |nl| before[nl + 1..].chars().count()) + 1;
    ParseError { line, column, kind }
}

struct Parser<'a> {
    text: &'a str,
    ring: &'a Ring,
    tokens: Vec<(Tok, usize)>,
    pos: usize,
}

/// Parses `text` into a grevlex polynomial of `ring`.
pub fn parse_polynomial(ring: &Ring, text: &str) -> Result<Polynomial, ParseError> {
    let tokens = Lexer::run(text)?;
    let mut p = Parser { text, ring, tokens, pos: 0 };
    if p.peek() == &Tok::End {
        return Err(p.error(ParseErrorKind::Syntax("empty polynomial".into())));
    }
    let result = p.expr()?;
    if p.peek() != &Tok::End {
        return Err(p.error(ParseErrorKind::Syntax("unexpected trailing input".into())));
    }
    Ok(result)
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        position_error(self.text, self.tokens[self.pos].1, kind)
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while self.peek() == &Tok::Star {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() != &Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let Tok::Int(n) = self.peek().clone() else {
            return Err(self.error(ParseErrorKind::Syntax("expected a nonnegative integer exponent".into())));
        };
        let e: u32 = n
            .try_into()
            .map_err(|_| self.error(ParseErrorKind::Syntax("exponent too large".into())))?;
        self.bump();
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let field = self.ring.field();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if self.peek() == &Tok::Slash {
                    self.bump();
                    let Tok::Int(d) = self.peek().clone() else {
                        return Err(self.error(ParseErrorKind::Syntax("expected a denominator".into())));
                    };
                    let value = field
                        .from_ratio(&n, &d)
                        .map_err(|_| self.error(ParseErrorKind::Syntax("zero denominator".into())))?;
                    self.bump();
                    Ok(self.ring.constant(value))
                } else {
                    Ok(self.ring.constant(field.from_bigint(&n)))
                }
            }
            Tok::Ident(name) => match self.ring.var_index(&name) {
                Some(i) => {
                    self.bump();
                    Ok(self.ring.var(i))
                }
                None => Err(self.error(ParseErrorKind::UnknownVariable(name))),
            },
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != &Tok::RParen {
                    return Err(self.error(ParseErrorKind::Syntax("expected ')'".into())));
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => Err(self.error(ParseErrorKind::Syntax("unexpected end of input".into()))),
            other => Err(self.error(ParseErrorKind::Syntax(format!("unexpected {}", describe(&other))))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Int(_) => "number",
        Tok::Ident(_) => "identifier",
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Slash => "'/'",
        Tok::Caret => "'^'",
        Tok::LParen => "'('",
        Tok::RParen => "')'",
        Tok::End => "end of input",
    }
}
