//! Parser for the polynomial input grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' INT)?
//! atom   := NUMBER | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! Division is only accepted by a nonzero constant, and exponents must be
//! nonnegative integer literals.

use rug::{Integer, Rational};
use thiserror::Error;

use super::BivarPoly;

/// Largest exponent literal accepted.
const MAX_EXPONENT: u32 = 512;
/// Largest total degree a parsed polynomial may reach.
const MAX_DEGREE: u32 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: expected {expected}")]
    SyntaxError { position: usize, expected: String },
    #[error("unsupported expression: {0}")]
    UnsupportedExpression(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational, bool),
    X,
    Y,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
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
            b'x' | b'X' => Tok::X,
            b'y' | b'Y' => Tok::Y,
            b'0'..=b'9' | b'.' => {
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let int_part = &s[start..i];
                let mut frac_part = "";
                let mut has_dot = false;
                if i < b.len() && b[i] == b'.' {
                    has_dot = true;
                    i += 1;
                    let fs = i;
                    while i < b.len() && b[i].is_ascii_digit() {
                        i += 1;
                    }
                    frac_part = &s[fs..i];
                }
                if int_part.is_empty() && frac_part.is_empty() {
                    return Err(ParseError::SyntaxError {
                        position: start,
                        expected: "digit".into(),
                    });
                }
                let digits = format!("{int_part}{frac_part}");
                let num: Integer = digits.parse().unwrap_or_default();
                let den = Integer::from(Integer::u_pow_u(10, frac_part.len() as u32));
                out.push((start, Tok::Num(Rational::from((num, den)), !has_dot)));
                continue;
            }
            _ => {
                return Err(ParseError::SyntaxError {
                    position: start,
                    expected: "x, y, number, operator or parenthesis".into(),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((s.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax(&self, expected: &str) -> ParseError {
        ParseError::SyntaxError {
            position: self.offset(),
            expected: expected.into(),
        }
    }

    fn expr(&mut self) -> Result<BivarPoly, ParseError> {
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
            check_degree(&acc)?;
        }
    }

    fn term(&mut self) -> Result<BivarPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.unary()?;
                    check_product(&acc, &rhs)?;
                    acc = &acc * &rhs;
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.unary()?;
                    if !rhs.is_constant() {
                        return Err(ParseError::UnsupportedExpression(
                            "division by a non-constant expression".into(),
                        ));
                    }
                    let c = rhs.constant_term();
                    if c == 0 {
                        return Err(ParseError::UnsupportedExpression("division by zero".into()));
                    }
                    acc = acc.scale(&(Rational::from(1) / c));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<BivarPoly, ParseError> {
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

    fn power(&mut self) -> Result<BivarPoly, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let e = match self.peek().clone() {
            Tok::Num(v, true) => v,
            Tok::Num(_, false) | Tok::Minus | Tok::LParen | Tok::X | Tok::Y => {
                return Err(ParseError::UnsupportedExpression(
                    "exponents must be nonnegative integer literals".into(),
                ))
            }
            _ => return Err(self.syntax("integer exponent")),
        };
        self.bump();
        if *self.peek() == Tok::Caret {
            return Err(ParseError::UnsupportedExpression(
                "exponents must be nonnegative integer literals".into(),
            ));
        }
        let e = e
            .numer()
            .to_u32()
            .filter(|&k| k <= MAX_EXPONENT)
            .ok_or_else(|| ParseError::UnsupportedExpression("exponent too large".into()))?;
        let d = base.total_degree().unwrap_or(0);
        if d.saturating_mul(e) > MAX_DEGREE {
            return Err(ParseError::UnsupportedExpression("degree too large".into()));
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<BivarPoly, ParseError> {
        match self.peek().clone() {
            Tok::Num(v, _) => {
                self.bump();
                Ok(BivarPoly::constant(v))
            }
            Tok::X => {
                self.bump();
                Ok(BivarPoly::x())
            }
            Tok::Y => {
                self.bump();
                Ok(BivarPoly::y())
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.syntax("')'"));
                }
                self.bump();
                Ok(e)
            }
            _ => Err(self.syntax("x, y, number or '('")),
        }
    }
}

fn check_degree(p: &BivarPoly) -> Result<(), ParseError> {
    if p.total_degree().unwrap_or(0) > MAX_DEGREE {
        return Err(ParseError::UnsupportedExpression("degree too large".into()));
    }
    Ok(())
}

fn check_product(a: &BivarPoly, b: &BivarPoly) -> Result<(), ParseError> {
    let d = a.total_degree().unwrap_or(0) + b.total_degree().unwrap_or(0);
    if d > MAX_DEGREE || a.num_terms().saturating_mul(b.num_terms()) > 1 << 22 {
        return Err(ParseError::UnsupportedExpression("degree too large".into()));
    }
    Ok(())
}

/// Parses a polynomial in `x`, `y` with rational coefficients.
pub fn parse_poly(s: &str) -> Result<BivarPoly, ParseError> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.syntax("operator or end of input"));
    }
    Ok(e)
}
