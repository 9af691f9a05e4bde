//! Truncated formal power series with exact rational coefficients.
//!
//! A `Series` carries its truncation order explicitly: coefficients are
//! indexed 0..=order and arithmetic never reads past the order. Binary
//! operations truncate to the minimum of the operand orders; there is no
//! implicit extension, so a coefficient is only ever produced when every
//! term contributing to it is known.

use crate::rational::{sqrt_exact, Rational};
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("division by a series with zero constant term")]
    DivByNonUnit,
    #[error("composition requires an inner series with zero constant term")]
    InnerNotDelta,
    #[error("reversion requires valuation exactly 1 (f(0)=0 and f'(0)!=0)")]
    NotInvertible,
    #[error("sqrt requires a nonzero perfect-square rational constant term")]
    NonSquareConstantTerm,
    #[error("series order {have} too small, need at least {need}")]
    InsufficientOrder { have: usize, need: usize },
    #[error("pole 1/t^{power} does not cancel: numerator valuation is {valuation}")]
    UncanceledPole { power: usize, valuation: usize },
}

#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>, // index k holds the t^k coefficient; len = order + 1
}

impl Series {
    /// Takes ownership of explicit coefficients; order = len - 1. Panics on empty input.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the t^0 coefficient");
        Series { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Series::from_coeffs(coeffs.iter().map(|&n| crate::rational::rat_int(n)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Series::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = c;
        Series { coeffs }
    }

    /// The series t. Panics if order is 0.
    pub fn t(order: usize) -> Self {
        assert!(order >= 1, "t needs order >= 1");
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[1] = Rational::one();
        Series { coeffs }
    }

    /// Polynomial coefficients laid out at an exact order: zero-padded above
    /// the degree, truncated below it.
    pub fn polynomial(coeffs: &[Rational], order: usize) -> Self {
        let mut v = vec![Rational::zero(); order + 1];
        for (k, c) in coeffs.iter().enumerate().take(order + 1) {
            v[k] = c.clone();
        }
        Series { coeffs: v }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of t^k. Panics when k exceeds the order: reading past the
    /// truncation would fabricate a zero that was never computed.
    pub fn coeff(&self, k: usize) -> &Rational {
        assert!(
            k < self.coeffs.len(),
            "coefficient {k} requested from a series of order {}",
            self.coeffs.len() - 1
        );
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the first nonzero coefficient; None when zero up to the order.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// Lowers the order, dropping high coefficients. Panics if asked to extend.
    pub fn truncate(&self, new_order: usize) -> Series {
        assert!(
            new_order <= self.order(),
            "truncate cannot extend order {} to {new_order}",
            self.order()
        );
        Series { coeffs: self.coeffs[..=new_order].to_vec() }
    }

    pub fn require_order(&self, need: usize) -> Result<(), SeriesError> {
        if self.order() < need {
            Err(SeriesError::InsufficientOrder { have: self.order(), need })
        } else {
            Ok(())
        }
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Exact quotient. The divisor needs a nonzero constant term.
    pub fn div(&self, rhs: &Series) -> Result<Series, SeriesError> {
        if rhs.coeffs[0].is_zero() {
            return Err(SeriesError::DivByNonUnit);
        }
        let order = self.order().min(rhs.order());
        let mut q = vec![Rational::zero(); order + 1];
        for k in 0..=order {
            let mut acc = self.coeffs[k].clone();
            for i in 1..=k {
                acc -= &rhs.coeffs[i] * &q[k - i];
            }
            q[k] = acc / &rhs.coeffs[0];
        }
        Ok(Series { coeffs: q })
    }

    /// Substitution self(inner); inner must have zero constant term.
    pub fn compose(&self, inner: &Series) -> Result<Series, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::InnerNotDelta);
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        // Horner from the top coefficient down.
        let mut acc = Series::constant(self.coeffs[order].clone(), order);
        for k in (0..order).rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse: returns rev with self(rev(t)) = t to the order.
    /// Requires valuation exactly 1.
    pub fn reversion(&self) -> Result<Series, SeriesError> {
        if !self.coeffs[0].is_zero() || self.order() < 1 || self.coeffs[1].is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let order = self.order();
        let f1 = &self.coeffs[1];
        let mut rev = vec![Rational::zero(); order + 1];
        rev[1] = f1.recip();
        // Solve [t^n] self(rev) = 0 for rev[n], one degree at a time; the
        // unknown enters linearly with coefficient f1.
        for n in 2..=order {
            let partial = Series { coeffs: rev[..=n].to_vec() };
            let value = self.truncate(n).compose(&partial)?;
            rev[n] = -(&value.coeffs[n] / f1);
        }
        Ok(Series { coeffs: rev })
    }

    /// Square root with s(0) the nonnegative exact root of the constant term,
    /// which must be a nonzero perfect square rational.
    pub fn sqrt(&self) -> Result<Series, SeriesError> {
        if self.coeffs[0].is_zero() {
            return Err(SeriesError::NonSquareConstantTerm);
        }
        let s0 = sqrt_exact(&self.coeffs[0]).ok_or(SeriesError::NonSquareConstantTerm)?;
        let order = self.order();
        let mut s = vec![Rational::zero(); order + 1];
        let two_s0 = &s0 + &s0;
        s[0] = s0;
        for n in 1..=order {
            let mut acc = self.coeffs[n].clone();
            for i in 1..n {
                acc -= &s[i] * &s[n - i];
            }
            s[n] = acc / &two_s0;
        }
        Ok(Series { coeffs: s })
    }

    /// Multiplication by t^k that keeps the order: high coefficients fall off.
    pub fn shift_t(&self, k: usize) -> Series {
        let len = self.coeffs.len();
        let mut v = vec![Rational::zero(); len];
        for i in k..len {
            v[i] = self.coeffs[i - k].clone();
        }
        Series { coeffs: v }
    }

    /// Multiplication by t^k that extends the order by k; every coefficient
    /// of the result is exact, so no information is invented.
    pub fn mul_tpow(&self, k: usize) -> Series {
        let mut v = vec![Rational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Series { coeffs: v }
    }

    /// Exact division by t^k: requires the first k coefficients to vanish.
    /// The order drops by k.
    pub fn div_tpow(&self, k: usize) -> Result<Series, SeriesError> {
        if k == 0 {
            return Ok(self.clone());
        }
        self.require_order(k)?;
        if let Some(v) = self.coeffs[..k].iter().position(|c| !c.is_zero()) {
            return Err(SeriesError::UncanceledPole { power: k, valuation: v });
        }
        Ok(Series { coeffs: self.coeffs[k..].to_vec() })
    }

    /// Derivative, order drops by 1. Panics at order 0.
    pub fn derivative(&self) -> Series {
        assert!(self.order() >= 1, "derivative needs order >= 1");
        let coeffs = (1..self.coeffs.len())
            .map(|k| &self.coeffs[k] * Rational::from_integer(k.into()))
            .collect();
        Series { coeffs }
    }
}

fn binary_min_order(a: &Series, b: &Series, f: impl Fn(&Rational, &Rational) -> Rational) -> Series {
    let order = a.order().min(b.order());
    let coeffs = (0..=order).map(|k| f(&a.coeffs[k], &b.coeffs[k])).collect();
    Series { coeffs }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        binary_min_order(self, rhs, |a, b| a + b)
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        binary_min_order(self, rhs, |a, b| a - b)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let mut v = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        Series { coeffs: v }
    }
}

impl fmt::Display for Series {
    /// Plain polynomial rendering of the stored coefficients: "1 - 2*t + 5*t^3".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if wrote {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let unit_mag = mag.is_one();
            match (k, unit_mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{mag}*t^{k}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{self}; order {}]", self.order())
    }
}
