//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := variable | integer | '(' expr ')'
//! ```
//!
//! Multiplication is always explicit; `2x` is rejected.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::numeric::Field;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    end: usize,
}

fn lex(text: &str, line: usize) -> Result<Lexer> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' | '\u{2212}' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            toks.push((t, col));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && (chars[i].is_ascii_alphabetic() || chars[i] == '_') {
                return Err(Error::parse(
                    line,
                    i + 1,
                    "implicit multiplication is not allowed; write '*'",
                ));
            }
            toks.push((Tok::Int(chars[start..i].iter().collect()), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else {
            return Err(Error::parse(
                line,
                col,
                format!("unexpected character {c:?}"),
            ));
        }
    }
    Ok(Lexer {
        toks,
        end: chars.len() + 1,
    })
}

struct Parser<'a, C: Field> {
    ring: &'a Arc<PolyRing>,
    lexer: Lexer,
    pos: usize,
    line: usize,
    _c: std::marker::PhantomData<C>,
}

impl<C: Field> Parser<'_, C> {
    fn peek(&self) -> Option<&Tok> {
        self.lexer.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.lexer
            .toks
            .get(self.pos)
            .map_or(self.lexer.end, |t| t.1)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.col(), msg)
    }

    fn expr(&mut self) -> Result<Polynomial<C>> {
        let negate = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<C>> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial<C>> {
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let col = self.col();
            let e = match self.peek() {
                Some(Tok::Int(s)) => s.clone(),
                _ => return Err(self.err("expected a natural-number exponent after '^'")),
            };
            self.pos += 1;
            let e: u32 = e
                .parse()
                .map_err(|_| Error::parse(self.line, col, "exponent overflow"))?;
            let deg = base.total_degree().unwrap_or(0) as u64;
            if deg * e as u64 > u32::MAX as u64 {
                return Err(Error::parse(self.line, col, "exponent overflow"));
            }
            return base.pow(e);
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial<C>> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let i = self.ring.var_index(&name).ok_or_else(|| {
                    Error::parse(self.line, col, format!("unknown variable {name:?}"))
                })?;
                Polynomial::var(self.ring, i)
            }
            Some(Tok::Int(s)) => {
                self.pos += 1;
                let n = BigInt::from_str(&s).expect("lexer produced digits");
                Ok(Polynomial::constant(
                    self.ring,
                    C::from_integer(&n, self.ring.domain())?,
                ))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.err("expected ')'")),
                }
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses `text` as a polynomial in `ring`; errors report line 1.
pub fn parse_polynomial<C: Field>(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial<C>> {
    parse_polynomial_at(text, ring, 1)
}

/// Like [`parse_polynomial`], reporting errors at the given line number.
pub fn parse_polynomial_at<C: Field>(
    text: &str,
    ring: &Arc<PolyRing>,
    line: usize,
) -> Result<Polynomial<C>> {
    let lexer = lex(text, line)?;
    if lexer.toks.is_empty() {
        return Err(Error::parse(line, 1, "empty expression"));
    }
    let mut p = Parser {
        ring,
        lexer,
        pos: 0,
        line,
        _c: std::marker::PhantomData,
    };
    let poly = p.expr()?;
    if p.pos != p.lexer.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(poly)
}
