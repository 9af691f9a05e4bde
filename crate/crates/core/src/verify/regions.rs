//! Parameter regions for the four worked tridiagonal production families.
//!
//! Each family fixes d0 = 1 and maps a rational pair (alpha, beta) to the
//! eight tridiagonal parameters. `region_check` evaluates the family's
//! stated feasibility predicate exactly; it is the data behind the region
//! plots. The predicate is not in general the exact TP region: `tp_verdict`
//! is the authority there, and the tests below pin one point where the two
//! disagree.

use std::fmt;
use std::str::FromStr;

use crate::rational::{format_rational, rat, rat_int, Rational};
use crate::sequences::TridiagonalProduction;
use num::Signed;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegionError {
    #[error("out of domain: {0}")]
    OutOfDomain(String),
    #[error("invalid grid: {0}")]
    BadGrid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionFamily {
    Azw1,
    Azw2,
    Azw3,
    Azw4,
}

impl RegionFamily {
    pub const ALL: [RegionFamily; 4] = [
        RegionFamily::Azw1,
        RegionFamily::Azw2,
        RegionFamily::Azw3,
        RegionFamily::Azw4,
    ];
}

impl fmt::Display for RegionFamily {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RegionFamily::Azw1 => "azw1",
            RegionFamily::Azw2 => "azw2",
            RegionFamily::Azw3 => "azw3",
            RegionFamily::Azw4 => "azw4",
        };
        write!(out, "{name}")
    }
}

impl FromStr for RegionFamily {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        match text.to_ascii_lowercase().as_str() {
            "azw1" => Ok(RegionFamily::Azw1),
            "azw2" => Ok(RegionFamily::Azw2),
            "azw3" => Ok(RegionFamily::Azw3),
            "azw4" => Ok(RegionFamily::Azw4),
            other => Err(format!("unknown family {other:?}, expected azw1..azw4")),
        }
    }
}

/// Tridiagonal parameters of a family at (alpha, beta); d0 is always 1.
/// No domain check: callers probing points outside the feasibility region
/// (or outside the alpha domain) still get well-defined parameters.
pub fn tridiagonal_params(
    family: RegionFamily,
    alpha: &Rational,
    beta: &Rational,
) -> TridiagonalProduction {
    let one = rat_int(1);
    let a2_sq4 = &(alpha * alpha) / &rat_int(4);
    let (a2, z2, w1) = match family {
        RegionFamily::Azw1 => (a2_sq4, one.clone(), beta.clone()),
        RegionFamily::Azw2 => (a2_sq4, beta.clone(), rat(1, 2)),
        RegionFamily::Azw3 => (one.clone(), one.clone(), beta.clone()),
        RegionFamily::Azw4 => (one.clone(), beta.clone(), rat(1, 3)),
    };
    TridiagonalProduction {
        a0: one.clone(),
        a1: alpha.clone(),
        a2,
        z0: one.clone(),
        z1: one.clone(),
        z2,
        w0: one,
        w1,
    }
}

fn domain_error(family: RegionFamily, alpha: &Rational) -> Option<RegionError> {
    let bad = |req: &str| {
        Some(RegionError::OutOfDomain(format!(
            "{family} needs {req}, got alpha = {}",
            format_rational(alpha)
        )))
    };
    match family {
        RegionFamily::Azw1 | RegionFamily::Azw2 => None,
        RegionFamily::Azw3 => {
            if *alpha <= rat_int(2) {
                bad("alpha > 2")
            } else {
                None
            }
        }
        RegionFamily::Azw4 => {
            if *alpha <= rat_int(2) || *alpha > rat_int(3) {
                bad("2 < alpha <= 3")
            } else {
                None
            }
        }
    }
}

fn predicate(family: RegionFamily, alpha: &Rational, beta: &Rational) -> bool {
    if beta.is_negative() {
        return false;
    }
    match family {
        // alpha >= 0 and alpha*(1 - beta) >= 2
        RegionFamily::Azw1 => {
            !alpha.is_negative() && alpha * &(&rat_int(1) - beta) >= rat_int(2)
        }
        // beta <= alpha/4
        RegionFamily::Azw2 => beta * &rat_int(4) <= *alpha,
        // beta <= 1 - 1/alpha (alpha > 2 here, so the division is safe)
        RegionFamily::Azw3 => beta <= &(&rat_int(1) - &(&rat_int(1) / alpha)),
        // beta <= 1 - alpha/3
        RegionFamily::Azw4 => beta <= &(&rat_int(1) - &(alpha / &rat_int(3))),
    }
}

/// Exact membership test for the family's feasibility region.
/// Errors with OutOfDomain when alpha is outside the family's domain.
pub fn region_check(
    family: RegionFamily,
    alpha: &Rational,
    beta: &Rational,
) -> Result<bool, RegionError> {
    if let Some(err) = domain_error(family, alpha) {
        return Err(err);
    }
    Ok(predicate(family, alpha, beta))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridPoint {
    #[serde(with = "crate::rational::frac_str")]
    pub alpha: Rational,
    #[serde(with = "crate::rational::frac_str")]
    pub beta: Rational,
    pub in_region: bool,
}

/// Samples the region on the closed rectangle [a_min,a_max] x [b_min,b_max]
/// with the given step. Points with alpha outside the family's domain are
/// labeled out rather than erroring, so grids may span the domain boundary.
pub fn region_grid(
    family: RegionFamily,
    alpha_min: &Rational,
    alpha_max: &Rational,
    beta_min: &Rational,
    beta_max: &Rational,
    step: &Rational,
) -> Result<Vec<GridPoint>, RegionError> {
    if !step.is_positive() {
        return Err(RegionError::BadGrid("step must be positive".into()));
    }
    if alpha_min > alpha_max || beta_min > beta_max {
        return Err(RegionError::BadGrid("empty range, min exceeds max".into()));
    }
    let axis = |lo: &Rational, hi: &Rational| -> Result<Vec<Rational>, RegionError> {
        let count = ((hi - lo) / step).floor().to_integer();
        if count >= 10_000.into() {
            return Err(RegionError::BadGrid("more than 10000 steps per axis".into()));
        }
        let mut ticks = Vec::new();
        let mut v = lo.clone();
        while v <= *hi {
            ticks.push(v.clone());
            v = &v + step;
        }
        Ok(ticks)
    };
    let mut points = Vec::new();
    let betas = axis(beta_min, beta_max)?;
    for alpha in axis(alpha_min, alpha_max)? {
        let in_domain = domain_error(family, &alpha).is_none();
        for beta in &betas {
            let in_region = in_domain && predicate(family, &alpha, beta);
            points.push(GridPoint { alpha: alpha.clone(), beta: beta.clone(), in_region });
        }
    }
    Ok(points)
}

/// CSV rendering of a sampled grid, one point per line, labeled in/out.
pub fn grid_to_csv(points: &[GridPoint]) -> String {
    let mut out = String::from("alpha,beta,region\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{}\n",
            format_rational(&p.alpha),
            format_rational(&p.beta),
            if p.in_region { "in" } else { "out" }
        ));
    }
    out
}
