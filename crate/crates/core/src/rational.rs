//! Exact rational scalars: thin helpers over arbitrary-precision `BigRational`.
//!
//! Every coefficient, matrix entry and determinant in this crate is one of
//! these. Values are always in lowest terms with a positive denominator,
//! which `Ratio::new` guarantees.

use num::bigint::BigInt;
use num::{One, Signed, Zero};

pub type Rational = num::BigRational;

/// p/q from machine integers. Panics if q is zero.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses "p" or "p/q" (either part may carry a sign); reduces to canonical form.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty rational literal".to_string());
    }
    if let Some((_, den)) = t.split_once('/') {
        if den.trim().trim_start_matches('-').chars().all(|c| c == '0') {
            return Err(format!("zero denominator in {t:?}"));
        }
    }
    t.parse::<Rational>().map_err(|e| format!("invalid rational {t:?}: {e}"))
}

/// Canonical "p" or "p/q" rendering, q > 0 and omitted when 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Integer power with rational exponent sign handling. Panics on 0^negative.
pub fn pow_rational(r: &Rational, n: i64) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    let e = n.unsigned_abs() as u32;
    let p = Rational::new(r.numer().pow(e), r.denom().pow(e));
    if n > 0 {
        p
    } else {
        assert!(!p.is_zero(), "zero base with negative exponent");
        p.recip()
    }
}

/// Exact square root when `r` is a ratio of perfect squares; None otherwise.
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rational::zero());
    }
    let sn = r.numer().sqrt();
    let sd = r.denom().sqrt();
    if &(&sn * &sn) == r.numer() && &(&sd * &sd) == r.denom() {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

/// Fixed-point decimal rendering with `digits` fractional digits,
/// rounded half away from zero. Display-only; never fed back into arithmetic.
pub fn decimal_string(r: &Rational, digits: usize) -> String {
    let neg = r.is_negative();
    let abs = r.abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    // round(|r| * 10^digits)
    let scaled = abs * Rational::from_integer(scale.clone());
    let (num, den) = (scaled.numer().clone(), scaled.denom().clone());
    let twice = BigInt::from(2) * &num + &den; // floor((2n+d)/(2d)) rounds half up
    let rounded = twice / (BigInt::from(2) * &den);
    let int_part = &rounded / &scale;
    let frac_part = &rounded % &scale;
    let sign = if neg && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac:0>width$}", frac = frac_part.to_string(), width = digits)
    }
}

/// Serde adapter: rationals as exact fraction strings.
pub mod frac_str {
    use super::Rational;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).map_err(D::Error::custom)
    }
}
