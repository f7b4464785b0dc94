//! Text grammar for algebraic tangles.
//!
//! ```text
//! expr     := sum ('o' sum)*
//! sum      := term ('+' term)*
//! term     := '(' expr ')' | fraction
//! fraction := ['-'] int ['/' int]
//! ```
//!
//! `+` is the tangle sum and `o` (or `∘`) the tangle product. Both are left
//! associative and `+` binds tighter. Whitespace is ignored.

use std::fmt;

use thiserror::Error;

use crate::fraction::Fraction;
use crate::tangle::TangleExpr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Empty,
    ZeroDenominator,
    ZeroTangle,
    UnbalancedParen,
    UnexpectedToken(String),
    UnexpectedEnd,
    IntegerOverflow,
}

/// A parse failure. `position` is the character offset of the offending token.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Empty => write!(f, "empty expression"),
            ParseErrorKind::ZeroDenominator => {
                write!(f, "zero denominator at position {}", self.position)
            }
            ParseErrorKind::ZeroTangle => {
                write!(
                    f,
                    "zero tangle at position {} is not allowed",
                    self.position
                )
            }
            ParseErrorKind::UnbalancedParen => {
                write!(f, "unbalanced parenthesis at position {}", self.position)
            }
            ParseErrorKind::UnexpectedToken(t) => {
                write!(f, "unexpected `{t}` at position {}", self.position)
            }
            ParseErrorKind::UnexpectedEnd => {
                write!(f, "unexpected end of input at position {}", self.position)
            }
            ParseErrorKind::IntegerOverflow => {
                write!(f, "integer too large at position {}", self.position)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Minus,
    Slash,
    Plus,
    Product,
    Open,
    Close,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Minus => f.write_str("-"),
            Tok::Slash => f.write_str("/"),
            Tok::Plus => f.write_str("+"),
            Tok::Product => f.write_str("o"),
            Tok::Open => f.write_str("("),
            Tok::Close => f.write_str(")"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                let mut n: i64 = 0;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    let d = chars[i] as i64 - '0' as i64;
                    n = n
                        .checked_mul(10)
                        .and_then(|n| n.checked_add(d))
                        .ok_or(ParseError {
                            kind: ParseErrorKind::IntegerOverflow,
                            position: start,
                        })?;
                    i += 1;
                }
                out.push((Tok::Int(n), start));
                continue;
            }
            '-' => Tok::Minus,
            '/' => Tok::Slash,
            '+' => Tok::Plus,
            'o' | '∘' => Tok::Product,
            '(' => Tok::Open,
            ')' => Tok::Close,
            other => {
                return Err(ParseError {
                    kind: ParseErrorKind::UnexpectedToken(other.to_string()),
                    position: i,
                })
            }
        };
        out.push((tok, i));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    open: Vec<usize>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            kind,
            position: self.offset(),
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some(Tok::Close) => self.err(ParseErrorKind::UnbalancedParen),
            Some(t) => self.err(ParseErrorKind::UnexpectedToken(t.to_string())),
            None => match self.open.last() {
                Some(&p) => ParseError {
                    kind: ParseErrorKind::UnbalancedParen,
                    position: p,
                },
                None => self.err(ParseErrorKind::UnexpectedEnd),
            },
        }
    }

    fn expr(&mut self) -> Result<TangleExpr, ParseError> {
        let mut lhs = self.sum()?;
        while self.peek() == Some(&Tok::Product) {
            self.pos += 1;
            let rhs = self.sum()?;
            lhs = TangleExpr::product(lhs, rhs);
        }
        Ok(lhs)
    }

    fn sum(&mut self) -> Result<TangleExpr, ParseError> {
        let mut lhs = self.term()?;
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = TangleExpr::sum(lhs, rhs);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<TangleExpr, ParseError> {
        match self.peek() {
            Some(Tok::Open) => {
                self.open.push(self.offset());
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(self.unexpected());
                }
                self.open.pop();
                self.pos += 1;
                Ok(inner)
            }
            Some(Tok::Minus) | Some(Tok::Int(_)) => self.fraction(),
            _ => Err(self.unexpected()),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        match self.peek() {
            Some(&Tok::Int(n)) => {
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.unexpected()),
        }
    }

    fn fraction(&mut self) -> Result<TangleExpr, ParseError> {
        let start = self.offset();
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let num = self.int()?;
        let den = if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            let at = self.offset();
            let d = self.int()?;
            if d == 0 {
                return Err(ParseError {
                    kind: ParseErrorKind::ZeroDenominator,
                    position: at,
                });
            }
            d
        } else {
            1
        };
        if num == 0 {
            return Err(ParseError {
                kind: ParseErrorKind::ZeroTangle,
                position: start,
            });
        }
        let num = if negative { -num } else { num };
        let f = Fraction::new(num, den).expect("nonzero denominator");
        Ok(TangleExpr::Rational(f))
    }
}

/// Parses a tangle expression.
pub fn parse(text: &str) -> Result<TangleExpr, ParseError> {
    let toks = lex(text)?;
    let end = text.chars().count();
    if toks.is_empty() {
        return Err(ParseError {
            kind: ParseErrorKind::Empty,
            position: 0,
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end,
        open: Vec::new(),
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.unexpected());
    }
    Ok(e)
}
