//! Closed-form generating function input: a small expression language over
//! rationals and the indeterminate t, evaluated to truncated series.
//!
//! Grammar (precedence low to high: +- then */ then unary - then ^):
//!
//!   expr  := term (('+' | '-') term)*
//!   term  := unary (('*' | '/') unary)*
//!   unary := '-' unary | power
//!   power := atom ('^' int)?          int is a literal, optionally negative
//!   atom  := number | 't' | '(' expr ')' | 'sqrt' '(' expr ')'
//!
//! Numbers are unsigned integers or fractions like 5/128 (the slash joins a
//! literal only when a digit follows, so 1/(1-t) still divides). Evaluation
//! works at a padded order and retries with more padding when a division
//! needs lookahead, so t/(t+t^2) comes out exact to the requested order.

use crate::rational::Rational;
use crate::series::{Series, SeriesError};
use num::{BigInt, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("evaluation still inexact after padding the working order to {reached}")]
    PrecisionCap { reached: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    T,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
    Sqrt(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    T,
    Sqrt,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(Tok, usize)>, ExprError> {
        let mut lx = Lexer {
            src: src.as_bytes(),
            pos: 0,
        };
        let mut out = Vec::new();
        while let Some(t) = lx.next_token()? {
            out.push(t);
        }
        Ok(out)
    }

    fn next_token(&mut self) -> Result<Option<(Tok, usize)>, ExprError> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.src.len() {
            return Ok(None);
        }
        let start = self.pos;
        let b = self.src[start];
        let tok = match b {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                let numer = self.read_digits();
                // a slash joins the literal only when digits follow directly
                if self.pos + 1 < self.src.len()
                    && self.src[self.pos] == b'/'
                    && self.src[self.pos + 1].is_ascii_digit()
                {
                    self.pos += 1;
                    let denom = self.read_digits();
                    if denom.is_zero() {
                        return Err(ExprError::Syntax {
                            offset: start,
                            message: "zero denominator in rational literal".into(),
                        });
                    }
                    return Ok(Some((Tok::Num(Rational::new(numer, denom)), start)));
                }
                return Ok(Some((Tok::Num(Rational::from_integer(numer)), start)));
            }
            b't' => Tok::T,
            b's' if self.src[start..].starts_with(b"sqrt") => {
                self.pos += 4;
                return Ok(Some((Tok::Sqrt, start)));
            }
            other => {
                return Err(ExprError::Syntax {
                    offset: start,
                    message: format!("unexpected character {:?}", other as char),
                });
            }
        };
        self.pos += 1;
        Ok(Some((tok, start)))
    }

    fn read_digits(&mut self) -> BigInt {
        let from = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[from..self.pos])
            .unwrap()
            .parse()
            .unwrap()
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.at).map_or(self.len, |&(_, o)| o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ExprError> {
        if self.peek() == Some(&want) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.at += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            return Ok(match self.unary()? {
                Expr::Num(r) => Expr::Num(-r),
                inner => Expr::Neg(Box::new(inner)),
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            true
        } else {
            false
        };
        match self.bump() {
            Some(Tok::Num(r)) if r.is_integer() => {
                let mag: i64 = match r.to_integer().try_into() {
                    Ok(v) => v,
                    Err(_) => return self.err("exponent out of range"),
                };
                Ok(Expr::Pow(Box::new(base), if negative { -mag } else { mag }))
            }
            _ => {
                self.at = self.at.saturating_sub(1);
                self.err("expected an integer exponent after ^")
            }
        }
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Num(r)) => {
                self.at += 1;
                Ok(Expr::Num(r))
            }
            Some(Tok::T) => {
                self.at += 1;
                Ok(Expr::T)
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "closing parenthesis")?;
                Ok(inner)
            }
            Some(Tok::Sqrt) => {
                self.at += 1;
                self.expect(Tok::LParen, "( after sqrt")?;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "closing parenthesis")?;
                Ok(Expr::Sqrt(Box::new(inner)))
            }
            _ => self.err("expected a number, t, parenthesis, or sqrt"),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, ExprError> {
    let toks = Lexer::tokens(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        len: src.len(),
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

// precedence bands for printing: 1 add, 2 mul, 3 unary minus, 4 power
fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(..) => 3,
        Expr::Num(r) if r.is_negative() => 3,
        Expr::Pow(..) => 4,
        Expr::Num(_) | Expr::T | Expr::Sqrt(..) => 5,
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
            if prec(e) < min {
                write!(f, "(")?;
                write!(f, "{e}")?;
                write!(f, ")")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            Expr::Num(r) => write!(f, "{r}"),
            Expr::T => write!(f, "t"),
            Expr::Add(a, b) => {
                child(f, a, 1)?;
                write!(f, "+")?;
                child(f, b, 2)
            }
            Expr::Sub(a, b) => {
                child(f, a, 1)?;
                write!(f, "-")?;
                child(f, b, 2)
            }
            Expr::Mul(a, b) => {
                child(f, a, 2)?;
                write!(f, "*")?;
                child(f, b, 3)
            }
            Expr::Div(a, b) => {
                child(f, a, 2)?;
                write!(f, "/")?;
                // a bare leading digit after '/' would lex as one fraction
                // literal, so such children keep their parentheses
                let leading_digit = match &**b {
                    Expr::Num(r) => !r.is_negative(),
                    Expr::Pow(base, _) => matches!(&**base, Expr::Num(r) if !r.is_negative()),
                    _ => false,
                };
                child(f, b, if leading_digit { 6 } else { 3 })
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                child(f, a, 3)
            }
            Expr::Pow(base, e) => {
                let bare = matches!(**base, Expr::T | Expr::Sqrt(..))
                    || matches!(&**base, Expr::Num(r) if !r.is_negative());
                if bare {
                    write!(f, "{base}")?;
                } else {
                    write!(f, "({base})")?;
                }
                write!(f, "^{e}")
            }
            Expr::Sqrt(a) => write!(f, "sqrt({a})"),
        }
    }
}

fn is_retryable(e: &SeriesError) -> bool {
    matches!(
        e,
        SeriesError::DivByNonUnit | SeriesError::InsufficientOrder { .. }
    )
}

/// Division that cancels a common power of t when the denominator has
/// positive valuation. A denominator that looks like zero at this working
/// order raises DivByNonUnit, which the outer loop treats as a request for
/// more padding.
fn div_series(num: &Series, den: &Series) -> Result<Series, SeriesError> {
    match den.valuation() {
        None => Err(SeriesError::DivByNonUnit),
        Some(0) => num.div(den),
        Some(v) => num.div_tpow(v)?.div(&den.div_tpow(v)?),
    }
}

fn eval_at(e: &Expr, order: usize) -> Result<Series, SeriesError> {
    match e {
        Expr::Num(r) => Ok(Series::constant(r.clone(), order)),
        Expr::T => Ok(Series::t(order)),
        Expr::Add(a, b) => Ok(&eval_at(a, order)? + &eval_at(b, order)?),
        Expr::Sub(a, b) => Ok(&eval_at(a, order)? - &eval_at(b, order)?),
        Expr::Mul(a, b) => Ok(&eval_at(a, order)? * &eval_at(b, order)?),
        Expr::Div(a, b) => div_series(&eval_at(a, order)?, &eval_at(b, order)?),
        Expr::Neg(a) => Ok(-&eval_at(a, order)?),
        Expr::Pow(base, exp) => {
            let b = eval_at(base, order)?;
            let mut acc = Series::one(order);
            for _ in 0..exp.unsigned_abs() {
                acc = &acc * &b;
            }
            if *exp >= 0 {
                Ok(acc)
            } else {
                div_series(&Series::one(order), &acc)
            }
        }
        Expr::Sqrt(a) => eval_at(a, order)?.sqrt(),
    }
}

/// Evaluates to an exact series of the requested order, padding the working
/// order (4, 16, 64, ..., capped past 4096) until divisions resolve.
pub fn eval(e: &Expr, order: usize) -> Result<Series, ExprError> {
    let mut slack = 4usize;
    loop {
        let capped = slack > 4096;
        match eval_at(e, order + slack) {
            Ok(s) if s.order() >= order => return Ok(s.truncate(order)),
            Ok(_) if capped => {
                return Err(ExprError::PrecisionCap {
                    reached: order + slack,
                })
            }
            Err(e) if capped || !is_retryable(&e) => return Err(e.into()),
            _ => {}
        }
        slack *= 4;
    }
}

/// Parse and evaluate in one step.
pub fn eval_gf(src: &str, order: usize) -> Result<Series, ExprError> {
    eval(&parse_expr(src)?, order)
}
