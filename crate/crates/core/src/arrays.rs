//! Riordan, quasi-Riordan and almost-Riordan array specs, their matrix
//! windows, group operations and factorizations.
//!
//! Column layouts:
//!   Riordan (g, f):        column j is g*f^j
//!   quasi [g, f]:          columns g, f, t*f, t^2*f, ...
//!   almost (d | g, f):     column 0 is d, column j>=1 is t*g*f^(j-1)
//!
//! Specs come in two validity tiers. Constructible means the window is a
//! well-defined lower-triangular array with positive diagonal (d(0)>0,
//! g(0)>0, f(0)=0, f'(0)>0). Normalized additionally pins d(0)=g(0)=1 and
//! f'(0)=1; the group operations require it.

use crate::matrix::MatrixWindow;

use crate::series::{Series, SeriesError};
use num::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArrayError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("not a normalized group element: {0}")]
    NotGroupElement(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Unchecked window builder for (d | g, f): used both by the typed specs and
/// by constructions that deliberately relax the validity tiers (d(0)=0 rows,
/// sign-free Riordan factors).
pub fn almost_window_unchecked(
    d: &Series,
    g: &Series,
    f: &Series,
    rows: usize,
    cols: usize,
) -> Result<MatrixWindow, SeriesError> {
    assert!(rows >= 1 && cols >= 1);
    for s in [d, g, f] {
        s.require_order(rows - 1)?;
    }
    let mut columns = Vec::with_capacity(cols);
    columns.push(d.truncate(rows - 1));
    let ft = f.truncate(rows - 1);
    let mut power = g.truncate(rows - 1); // g*f^(j-1) as j advances
    for _ in 1..cols {
        columns.push(power.shift_t(1));
        power = &power * &ft;
    }
    MatrixWindow::from_columns(&columns, rows)
}

/// Unchecked window builder for (g, f) with columns g*f^j.
pub fn riordan_window_unchecked(
    g: &Series,
    f: &Series,
    rows: usize,
    cols: usize,
) -> Result<MatrixWindow, SeriesError> {
    assert!(rows >= 1 && cols >= 1);
    for s in [g, f] {
        s.require_order(rows - 1)?;
    }
    let ft = f.truncate(rows - 1);
    let mut power = g.truncate(rows - 1);
    let mut columns = Vec::with_capacity(cols);
    for _ in 0..cols {
        columns.push(power.clone());
        power = &power * &ft;
    }
    MatrixWindow::from_columns(&columns, rows)
}

/// Unchecked window builder for [g, f] with columns g, f, t*f, t^2*f, ...
pub fn quasi_window_unchecked(
    g: &Series,
    f: &Series,
    rows: usize,
    cols: usize,
) -> Result<MatrixWindow, SeriesError> {
    assert!(rows >= 1 && cols >= 1);
    for s in [g, f] {
        s.require_order(rows - 1)?;
    }
    let mut columns = Vec::with_capacity(cols);
    columns.push(g.truncate(rows - 1));
    let mut shifted = f.truncate(rows - 1);
    for _ in 1..cols {
        columns.push(shifted.clone());
        shifted = shifted.shift_t(1);
    }
    MatrixWindow::from_columns(&columns, rows)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiordanSpec {
    g: Series,
    f: Series,
}

impl RiordanSpec {
    /// Requires g(0) != 0, f(0) = 0, f'(0) != 0.
    pub fn new(g: Series, f: Series) -> Result<Self, ArrayError> {
        if g.constant_term().is_zero() {
            return Err(ArrayError::InvalidSpec("g(0) must be nonzero".into()));
        }
        if f.order() < 1 || !f.constant_term().is_zero() || f.coeff(1).is_zero() {
            return Err(ArrayError::InvalidSpec("f needs f(0)=0 and f'(0)!=0".into()));
        }
        Ok(RiordanSpec { g, f })
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn f(&self) -> &Series {
        &self.f
    }

    pub fn window(&self, rows: usize, cols: usize) -> Result<MatrixWindow, SeriesError> {
        riordan_window_unchecked(&self.g, &self.f, rows, cols)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiRiordanSpec {
    g: Series,
    f: Series,
}

impl QuasiRiordanSpec {
    /// Constructible tier: g(0) > 0 and f(0) = 0.
    pub fn new(g: Series, f: Series) -> Result<Self, ArrayError> {
        if !g.constant_term().is_positive() {
            return Err(ArrayError::InvalidSpec("quasi spec needs g(0) > 0".into()));
        }
        if f.order() < 1 || !f.constant_term().is_zero() {
            return Err(ArrayError::InvalidSpec("quasi spec needs f(0) = 0".into()));
        }
        Ok(QuasiRiordanSpec { g, f })
    }

    pub fn identity(order: usize) -> Self {
        QuasiRiordanSpec { g: Series::one(order), f: Series::t(order) }
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn f(&self) -> &Series {
        &self.f
    }

    pub fn is_normalized(&self) -> bool {
        self.g.constant_term().is_one()
    }

    pub fn window(&self, rows: usize, cols: usize) -> Result<MatrixWindow, SeriesError> {
        quasi_window_unchecked(&self.g, &self.f, rows, cols)
    }

    /// Group product [g,f][d,h] = [g + (f/t)(d-1), f*h/t]. The right factor
    /// must be normalized (d(0)=1) for the window product to agree.
    pub fn multiply(&self, rhs: &QuasiRiordanSpec) -> Result<QuasiRiordanSpec, ArrayError> {
        if !rhs.is_normalized() {
            return Err(ArrayError::NotGroupElement(
                "right quasi factor needs g(0) = 1".into(),
            ));
        }
        let f_over_t = self.f.div_tpow(1)?;
        let dm1 = &rhs.g - &Series::one(rhs.g.order());
        let g = &self.g + &(&f_over_t * &dm1);
        let f = (&self.f * &rhs.f).div_tpow(1)?;
        QuasiRiordanSpec::new(g, f)
    }

    /// Action on a coefficient vector read as a series:
    /// [g,f] u = g*u(0) + (f/t)(u - u(0)).
    pub fn apply(&self, u: &Series) -> Result<Series, SeriesError> {
        let u0 = u.constant_term().clone();
        let centered = u - &Series::constant(u0.clone(), u.order());
        let f_over_t = self.f.div_tpow(1)?;
        Ok(&self.g.scale(&u0) + &(&f_over_t * &centered))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostRiordanSpec {
    d: Series,
    g: Series,
    f: Series,
}

impl AlmostRiordanSpec {
    /// Constructible tier: d(0) > 0, g(0) > 0, f(0) = 0, f'(0) > 0.
    pub fn new(d: Series, g: Series, f: Series) -> Result<Self, ArrayError> {
        if !d.constant_term().is_positive() {
            return Err(ArrayError::InvalidSpec("almost spec needs d(0) > 0".into()));
        }
        if !g.constant_term().is_positive() {
            return Err(ArrayError::InvalidSpec("almost spec needs g(0) > 0".into()));
        }
        if f.order() < 1 || !f.constant_term().is_zero() || !f.coeff(1).is_positive() {
            return Err(ArrayError::InvalidSpec(
                "almost spec needs f(0) = 0 and f'(0) > 0".into(),
            ));
        }
        Ok(AlmostRiordanSpec { d, g, f })
    }

    pub fn identity(order: usize) -> Self {
        AlmostRiordanSpec {
            d: Series::one(order),
            g: Series::one(order),
            f: Series::t(order),
        }
    }

    pub fn d(&self) -> &Series {
        &self.d
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn f(&self) -> &Series {
        &self.f
    }

    pub fn is_normalized(&self) -> bool {
        self.d.constant_term().is_one()
            && self.g.constant_term().is_one()
            && self.f.coeff(1).is_one()
    }

    pub fn window(&self, rows: usize, cols: usize) -> Result<MatrixWindow, SeriesError> {
        almost_window_unchecked(&self.d, &self.g, &self.f, rows, cols)
    }

    /// Group product of normalized elements:
    /// (a|g,f)(b|d,h) = (a + (tg/f)(b(f)-1) | g*d(f), h(f)).
    pub fn multiply(&self, rhs: &AlmostRiordanSpec) -> Result<AlmostRiordanSpec, ArrayError> {
        if !self.is_normalized() || !rhs.is_normalized() {
            return Err(ArrayError::NotGroupElement(
                "almost product needs both factors normalized".into(),
            ));
        }
        let f_over_t = self.f.div_tpow(1)?; // unit since f'(0)=1
        let tg_over_f = self.g.div(&f_over_t)?;
        let b_of_f = rhs.d.compose(&self.f)?;
        let bm1 = &b_of_f - &Series::one(b_of_f.order());
        let d = &self.d + &(&tg_over_f * &bm1);
        let g = &self.g * &rhs.g.compose(&self.f)?;
        let f = rhs.f.compose(&self.f)?;
        AlmostRiordanSpec::new(d, g, f)
    }

    /// Semidirect factorization (d|g,f) = [d, t*g] * (1|1, f), valid for any
    /// constructible spec: the window of self equals the product of the two
    /// factor windows at every size.
    pub fn semidirect_factors(&self) -> Result<(QuasiRiordanSpec, AlmostRiordanSpec), ArrayError> {
        let quasi = QuasiRiordanSpec::new(self.d.clone(), self.g.mul_tpow(1))?;
        let order = self.f.order();
        let tail = AlmostRiordanSpec::new(Series::one(order), Series::one(order), self.f.clone())?;
        Ok((quasi, tail))
    }
}

/// Window identity (g,f) = [g,f] * ([1] direct-sum (g,f)) checked exactly on
/// N x N windows. Holds for every valid Riordan spec; exposed as an oracle.
pub fn verify_quasi_factorization(spec: &RiordanSpec, n: usize) -> Result<bool, SeriesError> {
    assert!(n >= 2, "factorization check needs a window of at least 2");
    let full = spec.window(n, n)?;
    let quasi = quasi_window_unchecked(spec.g(), spec.f(), n, n)?;
    let inner = spec.window(n - 1, n - 1)?;
    let one = MatrixWindow::identity(1);
    let rhs = quasi.mul(&one.direct_sum(&inner)).expect("size match");
    Ok(full == rhs)
}
