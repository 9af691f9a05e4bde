//! A/Z/W characteristic sequences, production matrices, and recovery of an
//! almost-Riordan spec from tridiagonal production data.
//!
//! The production matrix J of an array M satisfies M*J = M-with-first-row-
//! deleted. Its columns are generated by W (column 0), Z (column 1) and
//! shifted copies of A (columns 2 and up):
//!
//!   J[i][0] = w_i,  J[i][1] = z_i,  J[i][j] = a_(i-j+1) for j >= 2.

use crate::arrays::{AlmostRiordanSpec, ArrayError, QuasiRiordanSpec};
use crate::matrix::MatrixWindow;
use crate::rational::Rational;
use crate::series::{Series, SeriesError};
use num::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeqError {
    #[error("f is not reversible: needs f(0) = 0 and f'(0) != 0")]
    NotReversible,
    #[error("invalid input: {0}")]
    InvalidSpec(String),
    #[error("window is not lower-triangular")]
    NotLowerTriangular,
    #[error("zero diagonal entry at row {row}")]
    SingularDiagonal { row: usize },
    #[error("window shape unsuitable: {0}")]
    Shape(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Array(#[from] ArrayError),
}

/// The three characteristic series plus their leading scalars. Invariants:
/// z(0) = z0 and w(0) = w0; a(0) equals f'(0) of the source array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AzwTriple {
    pub a: Series,
    pub z: Series,
    pub w: Series,
    pub z0: Rational,
    pub w0: Rational,
}

impl AzwTriple {
    pub fn new(a: Series, z: Series, w: Series) -> Self {
        let z0 = z.constant_term().clone();
        let w0 = w.constant_term().clone();
        AzwTriple { a, z, w, z0, w0 }
    }

    pub fn order(&self) -> usize {
        self.a.order().min(self.z.order()).min(self.w.order())
    }
}

/// A(t) = t/rev(f);
/// Z(t) = t(g(rev) - z0*d(rev)) / (rev*g(rev)) + z0 with z0 = g(0)/d(0);
/// W(t) = t(d(rev) - d(0) - w0*rev*d(rev)) / (rev^2*g(rev)) + w0 with w0 = d1/d0.
///
/// The advertised cancellations are exact: both numerators vanish to the
/// required depth by construction, so every output coefficient up to `order`
/// is exact. Input series need order at least order+1.
pub fn azw_from_almost(spec: &AlmostRiordanSpec, order: usize) -> Result<AzwTriple, SeqError> {
    let m = order + 1;
    for s in [spec.d(), spec.g(), spec.f()] {
        s.require_order(m).map_err(SeqError::Series)?;
    }
    let d = spec.d().truncate(m);
    let g = spec.g().truncate(m);
    let f = spec.f().truncate(m);

    let rev = f.reversion().map_err(|_| SeqError::NotReversible)?;
    let v = rev.div_tpow(1)?; // rev/t, unit constant term
    let a = Series::one(v.order()).div(&v)?;

    let g_rev = g.compose(&rev)?;
    let d_rev = d.compose(&rev)?;
    let d0 = d.constant_term().clone();
    let z0 = g.constant_term() / &d0;
    let w0 = d.coeff(1) / &d0;

    let num_z = &g_rev - &d_rev.scale(&z0);
    let u_z = num_z.div_tpow(1)?;
    let den_z = &v * &g_rev;
    let z_tail = u_z.div(&den_z)?.mul_tpow(1);
    let z = &z_tail + &Series::constant(z0.clone(), z_tail.order());

    let num_w = &(&d_rev - &Series::constant(d0, d_rev.order())) - &(&rev * &d_rev).scale(&w0);
    let u_w = num_w.div_tpow(2)?;
    let den_w = &(&v * &v) * &g_rev;
    let w_tail = u_w.div(&den_w)?.mul_tpow(1);
    let w = &w_tail + &Series::constant(w0.clone(), w_tail.order());

    Ok(AzwTriple::new(
        a.truncate(order),
        z.truncate(order),
        w.truncate(order),
    ))
}

/// Quasi reduction for [d, g] (column 0 generated by d, column 1 by g):
/// A = 1; Z = (g - z0*t*d)/g + z0; W = (d - d0 - w0*t*d)/g + w0,
/// with z0 = g1/d0 and w0 = d1/d0. Needs g'(0) != 0.
pub fn azw_from_quasi(spec: &QuasiRiordanSpec, order: usize) -> Result<AzwTriple, SeqError> {
    let m = order + 1;
    for s in [spec.g(), spec.f()] {
        s.require_order(m).map_err(SeqError::Series)?;
    }
    let d = spec.g().truncate(m);
    let gcol = spec.f().truncate(m);
    if gcol.coeff(1).is_zero() {
        return Err(SeqError::InvalidSpec(
            "quasi characteristic sequences need a nonzero t-coefficient in column 1".into(),
        ));
    }
    let d0 = d.constant_term().clone();
    let z0 = gcol.coeff(1) / &d0;
    let w0 = d.coeff(1) / &d0;

    let a = Series::one(order);
    let g_over_t = gcol.div_tpow(1)?;

    let td = d.mul_tpow(1);
    let num_z = &gcol - &td.scale(&z0);
    let z_tail = num_z.div_tpow(1)?.div(&g_over_t)?;
    let z = &z_tail + &Series::constant(z0.clone(), z_tail.order());

    let num_w = &(&d - &Series::constant(d0, d.order())) - &td.scale(&w0);
    let w_tail = num_w.div_tpow(1)?.div(&g_over_t)?;
    let w = &w_tail + &Series::constant(w0.clone(), w_tail.order());

    Ok(AzwTriple::new(a, z.truncate(order), w.truncate(order)))
}

/// N x N production window: column 0 from W, column 1 from Z, columns j >= 2
/// carry a_(i-j+1) down the band.
pub fn production_from_azw(azw: &AzwTriple, n: usize) -> Result<MatrixWindow, SeqError> {
    assert!(n >= 1);
    azw.w.require_order(n - 1).map_err(SeqError::Series)?;
    if n >= 2 {
        azw.z.require_order(n - 1).map_err(SeqError::Series)?;
        azw.a.require_order(n - 2).map_err(SeqError::Series)?;
    }
    let mut j = MatrixWindow::zero(n, n);
    for i in 0..n {
        *j.get_mut(i, 0) = azw.w.coeff(i).clone();
        if n >= 2 {
            *j.get_mut(i, 1) = azw.z.coeff(i).clone();
        }
        for col in 2..n {
            if i + 1 >= col {
                *j.get_mut(i, col) = azw.a.coeff(i + 1 - col).clone();
            }
        }
    }
    Ok(j)
}

/// Exact check of the defining identity: window(spec) * J equals the window
/// of spec with its first row deleted, on an N x N view.
pub fn check_production_identity(
    spec: &AlmostRiordanSpec,
    azw: &AzwTriple,
    n: usize,
) -> Result<bool, SeqError> {
    let big = spec.window(n + 1, n)?;
    let m = big.block(0, 0, n, n);
    let shifted = big.block(1, 0, n, n);
    let j = production_from_azw(azw, n)?;
    Ok(m.mul(&j).expect("square sizes") == shifted)
}

/// Solves M*J = M-with-first-row-deleted for J by forward substitution.
/// M must be lower-triangular, R >= 2, C >= R-1, with nonzero diagonal on
/// rows 0..R-2. The result is (R-1) x C.
pub fn extract_production(m: &MatrixWindow) -> Result<MatrixWindow, SeqError> {
    let (r, c) = (m.rows(), m.cols());
    if !m.is_lower_triangular() {
        return Err(SeqError::NotLowerTriangular);
    }
    if r < 2 {
        return Err(SeqError::Shape("need at least two rows".into()));
    }
    if c < r - 1 {
        return Err(SeqError::Shape(format!(
            "need at least {} columns for {} rows",
            r - 1,
            r
        )));
    }
    let mut j = MatrixWindow::zero(r - 1, c);
    for i in 0..r - 1 {
        if m.get(i, i).is_zero() {
            return Err(SeqError::SingularDiagonal { row: i });
        }
        for col in 0..c {
            let mut acc = m.get(i + 1, col).clone();
            for k in 0..i {
                acc -= m.get(i, k) * j.get(k, col);
            }
            *j.get_mut(i, col) = acc / m.get(i, i);
        }
    }
    Ok(j)
}

/// The eight scalars of a tridiagonal production matrix:
///
///   [ w0  z0            ]
///   [ w1  z1  a0        ]
///   [     z2  a1  a0    ]
///   [         a2  a1  ..]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TridiagonalProduction {
    #[serde(with = "crate::rational::frac_str")]
    pub a0: Rational,
    #[serde(with = "crate::rational::frac_str")]
    pub a1: Rational,
    #[serde(with = "crate::rational::frac_str")]
    pub a2: Rational,
    #[serde(with = "crate::rational::frac_str")]
    pub z0: Rational,
    #[serde(with = "crate::rational::frac_str")]
    pub z1: Rational,
    #[serde(with = "crate::rational::frac_str")]
    pub z2: Rational,
    #[serde(with = "crate::rational::frac_str")]
    pub w0: Rational,
    #[serde(with = "crate::rational::frac_str")]
    pub w1: Rational,
}

impl TridiagonalProduction {
    pub fn from_i64(a: [i64; 3], z: [i64; 3], w: [i64; 2]) -> Self {
        use crate::rational::rat_int as q;
        TridiagonalProduction {
            a0: q(a[0]),
            a1: q(a[1]),
            a2: q(a[2]),
            z0: q(z[0]),
            z1: q(z[1]),
            z2: q(z[2]),
            w0: q(w[0]),
            w1: q(w[1]),
        }
    }

    pub fn params(&self) -> [&Rational; 8] {
        [&self.a0, &self.a1, &self.a2, &self.z0, &self.z1, &self.z2, &self.w0, &self.w1]
    }

    /// Polynomial A/Z/W padded to the requested order (at least 2, so no
    /// coefficient is silently dropped).
    pub fn to_azw(&self, order: usize) -> AzwTriple {
        assert!(order >= 2, "tridiagonal data needs order >= 2");
        AzwTriple::new(
            Series::polynomial(&[self.a0.clone(), self.a1.clone(), self.a2.clone()], order),
            Series::polynomial(&[self.z0.clone(), self.z1.clone(), self.z2.clone()], order),
            Series::polynomial(&[self.w0.clone(), self.w1.clone()], order),
        )
    }

    pub fn production_window(&self, n: usize) -> MatrixWindow {
        let order = n.saturating_sub(1).max(2);
        production_from_azw(&self.to_azw(order), n).expect("orders sized above")
    }

    pub fn discriminant(&self) -> Rational {
        &self.a1 * &self.a1 - Rational::from_integer(4.into()) * &self.a0 * &self.a2
    }
}

/// Rebuilds (d | g, f) from tridiagonal production data:
///   f: root of a2*t*f^2 + (a1*t - 1)*f + a0*t = 0 with f(0)=0
///      (a2 != 0 takes the closed square-root form; a2 = 0 degenerates to
///       f = a0*t/(1 - a1*t));
///   F = 1 - (w0+z1)t + (w0*z1 - w1*z0)t^2 - z2*(1 - w0*t)*t*f;
///   d = d0*(1 - z1*t - z2*t*f)/F;
///   g = d0*z0/F.
pub fn recover_from_tridiagonal(
    p: &TridiagonalProduction,
    d0: &Rational,
    order: usize,
) -> Result<AlmostRiordanSpec, SeqError> {
    let m = order + 1;
    let one = Rational::one();
    let two = Rational::from_integer(2.into());

    let f = if p.a2.is_zero() {
        let num = Series::polynomial(&[Rational::zero(), p.a0.clone()], order);
        let den = Series::polynomial(&[one.clone(), -p.a1.clone()], order);
        num.div(&den)?
    } else {
        // (1 - a1*t - sqrt((a1^2 - 4*a2*a0)t^2 - 2*a1*t + 1)) / (2*a2*t)
        let radicand = Series::polynomial(
            &[one.clone(), -(&two * &p.a1), p.discriminant()],
            m,
        );
        let root = radicand.sqrt()?;
        let num = &Series::polynomial(&[one.clone(), -p.a1.clone()], m) - &root;
        debug_assert!(num.valuation().map_or(true, |v| v >= 1));
        num.div_tpow(1)?.scale(&(&one / &(&two * &p.a2)))
    };

    let tf = f.mul_tpow(1);
    let w0z1 = &p.w0 * &p.z1;
    let w1z0 = &p.w1 * &p.z0;
    let quad = Series::polynomial(&[one.clone(), -(&p.w0 + &p.z1), &w0z1 - &w1z0], tf.order());
    let corner = Series::polynomial(&[one.clone(), -p.w0.clone()], tf.order());
    let big_f = &quad - &(&corner * &tf).scale(&p.z2);

    let d_num = &Series::polynomial(&[one, -p.z1.clone()], tf.order()) - &tf.scale(&p.z2);
    let d = d_num.div(&big_f)?.scale(d0).truncate(order);
    let g = Series::constant(d0 * &p.z0, big_f.order())
        .div(&big_f)?
        .truncate(order);

    Ok(AlmostRiordanSpec::new(d, g, f.truncate(order))?)
}
