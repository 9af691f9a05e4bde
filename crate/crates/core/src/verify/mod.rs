//! Cross-checking layer: builders for the structured positivity statements,
//! a premise/conclusion consistency report, family parameter regions and
//! the worked-example corpus.

pub mod corpus;
pub mod regions;

pub use corpus::{
    corpus_entries, run_corpus, CheckResult, CorpusEntry, CorpusReport, CorpusSource,
    DiscrepancyNote, EntryReport,
};
pub use regions::{
    grid_to_csv, region_check, region_grid, tridiagonal_params, GridPoint, RegionError,
    RegionFamily,
};

use crate::arrays::{almost_window_unchecked, AlmostRiordanSpec, ArrayError, QuasiRiordanSpec};
use crate::matrix::MatrixWindow;
use crate::rational::Rational;
use crate::series::{Series, SeriesError};
use crate::tp::{is_pf_polynomial, pf_window_check, tp_check, Strategy, TpError, TpReport};
use num::{Signed, Zero};
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Array(#[from] ArrayError),
    #[error(transparent)]
    Tp(#[from] TpError),
}

/// Window of (t*g + alpha | g, f) for alpha > 0: the initial column is the
/// g column shifted down one row with alpha stacked on top. Positivity of
/// alpha keeps the spec in the constructible tier.
pub fn tg_plus_alpha_window(
    g: &Series,
    f: &Series,
    alpha: &Rational,
    n: usize,
) -> Result<MatrixWindow, VerifyError> {
    if !alpha.is_positive() {
        return Err(VerifyError::Invalid("alpha must be positive".into()));
    }
    let d = &g.mul_tpow(1) + &Series::constant(alpha.clone(), g.order() + 1);
    let spec = AlmostRiordanSpec::new(d, g.clone(), f.clone())?;
    Ok(spec.window(n, n)?)
}

/// Window of (d0 + d1*t | g, f) for d0, d1 >= 0. d0 = 0 is allowed, so this
/// bypasses the constructible spec tier and builds the window directly.
pub fn linear_d_window(
    g: &Series,
    f: &Series,
    d0: &Rational,
    d1: &Rational,
    n: usize,
) -> Result<MatrixWindow, VerifyError> {
    if d0.is_negative() || d1.is_negative() {
        return Err(VerifyError::Invalid("d0 and d1 must be nonnegative".into()));
    }
    if !g.constant_term().is_positive() {
        return Err(VerifyError::Invalid("g(0) must be positive".into()));
    }
    if f.order() < 1 || !f.constant_term().is_zero() || !f.coeff(1).is_positive() {
        return Err(VerifyError::Invalid("f needs f(0) = 0 and f'(0) > 0".into()));
    }
    let d = Series::polynomial(&[d0.clone(), d1.clone()], g.order());
    Ok(almost_window_unchecked(&d, g, f, n, n)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PfMode {
    /// f was a polynomial of degree at most 2, decided by the exact test.
    ExactPolynomial,
    /// f was screened through a Toeplitz window check (necessary only).
    WindowScreen,
}

/// Truth table for "f is PF and the initial-column pair [d, t*g] is window
/// TP imply the full array (d | g, f) is window TP". `consistent` is false
/// exactly when the premises hold and the conclusion fails.
#[derive(Debug, Clone, Serialize)]
pub struct ImplicationReport {
    pub f_pf: bool,
    pub pf_mode: PfMode,
    pub quasi_tp: TpReport,
    pub almost_tp: TpReport,
    pub premises_hold: bool,
    pub conclusion_holds: bool,
    pub consistent: bool,
}

pub fn tp_implication_check(
    d: &Series,
    g: &Series,
    f: &Series,
    n: usize,
    max_order: usize,
) -> Result<ImplicationReport, VerifyError> {
    let (f_pf, pf_mode) = match is_pf_polynomial(f) {
        Ok(flag) => (flag, PfMode::ExactPolynomial),
        Err(TpError::DegreeTooHigh { .. }) => {
            let screen = pf_window_check(f, n, max_order)?;
            (screen.is_tp(), PfMode::WindowScreen)
        }
        Err(err) => return Err(err.into()),
    };
    let quasi = QuasiRiordanSpec::new(d.clone(), g.mul_tpow(1))?;
    let quasi_tp = tp_check(&quasi.window(n, n)?, max_order, Strategy::All);
    let almost = AlmostRiordanSpec::new(d.clone(), g.clone(), f.clone())?;
    let almost_tp = tp_check(&almost.window(n, n)?, max_order, Strategy::All);
    let premises_hold = f_pf && quasi_tp.is_tp();
    let conclusion_holds = almost_tp.is_tp();
    Ok(ImplicationReport {
        f_pf,
        pf_mode,
        quasi_tp,
        almost_tp,
        premises_hold,
        conclusion_holds,
        consistent: !(premises_hold && !conclusion_holds),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::eval_gf;
    use crate::matrix::MatrixWindow;
    use crate::rational::rat_int;
    use crate::tp::Verdict;

    #[test]
    fn tg_plus_alpha_stacks_the_g_column() {
        let g = eval_gf("1/(1-t)", 8).unwrap();
        let f = eval_gf("t", 8).unwrap();
        let w = tg_plus_alpha_window(&g, &f, &rat_int(1), 6).unwrap();
        for i in 0..6 {
            assert_eq!(*w.get(i, 0), rat_int(1));
        }
        assert_eq!(*w.get(1, 1), rat_int(1));
        assert_eq!(*w.get(5, 1), rat_int(1));
        let report = tp_check(&w, 3, Strategy::All);
        assert_eq!(report.verdict, Verdict::WindowTp);
    }

    #[test]
    fn tg_plus_alpha_identity_pair_is_bidiagonal() {
        let g = Series::one(8);
        let f = Series::t(8);
        let w = tg_plus_alpha_window(&g, &f, &rat_int(1), 5).unwrap();
        let expected = MatrixWindow::from_rows_i64(&[
            &[1, 0, 0, 0, 0],
            &[1, 1, 0, 0, 0],
            &[0, 0, 1, 0, 0],
            &[0, 0, 0, 1, 0],
            &[0, 0, 0, 0, 1],
        ]);
        assert_eq!(w, expected);
        assert!(tp_check(&w, 5, Strategy::All).is_tp());
    }

    #[test]
    fn tg_plus_alpha_rejects_nonpositive_alpha() {
        let g = Series::one(8);
        let f = Series::t(8);
        assert!(matches!(
            tg_plus_alpha_window(&g, &f, &rat_int(0), 5),
            Err(VerifyError::Invalid(_))
        ));
    }

    #[test]
    fn linear_d_matches_the_counterexample_array() {
        let g = eval_gf("1+t", 8).unwrap();
        let f = eval_gf("2*t+t^2", 8).unwrap();
        let w = linear_d_window(&g, &f, &rat_int(1), &rat_int(3), 6).unwrap();
        let expected = MatrixWindow::from_rows_i64(&[
            &[1, 0, 0, 0, 0, 0],
            &[3, 1, 0, 0, 0, 0],
            &[0, 1, 2, 0, 0, 0],
            &[0, 0, 3, 4, 0, 0],
            &[0, 0, 1, 8, 8, 0],
            &[0, 0, 0, 5, 20, 16],
        ]);
        assert_eq!(w, expected);
        assert!(tp_check(&w, 4, Strategy::All).is_tp());
    }

    #[test]
    fn linear_d_allows_zero_constant() {
        let g = eval_gf("1/(1-t)", 8).unwrap();
        let f = eval_gf("t", 8).unwrap();
        let w = linear_d_window(&g, &f, &rat_int(0), &rat_int(1), 5).unwrap();
        assert_eq!(*w.get(0, 0), rat_int(0));
        assert_eq!(*w.get(1, 0), rat_int(1));
        assert_eq!(*w.get(2, 0), rat_int(0));
        assert!(tp_check(&w, 3, Strategy::All).is_tp());
    }

    #[test]
    fn linear_d_rejects_negative_coefficients() {
        let g = Series::one(8);
        let f = Series::t(8);
        assert!(matches!(
            linear_d_window(&g, &f, &rat_int(1), &rat_int(-1), 5),
            Err(VerifyError::Invalid(_))
        ));
    }

    #[test]
    fn implication_holds_for_the_geometric_family() {
        let d = eval_gf("(1-t)/(1-2*t)", 10).unwrap();
        let g = eval_gf("1/(1-2*t)", 10).unwrap();
        let f = eval_gf("2*t+t^2", 10).unwrap();
        let report = tp_implication_check(&d, &g, &f, 6, 4).unwrap();
        assert!(report.f_pf);
        assert_eq!(report.pf_mode, PfMode::ExactPolynomial);
        assert!(report.premises_hold);
        assert!(report.conclusion_holds);
        assert!(report.consistent);
    }

    #[test]
    fn implication_vacuous_when_premise_fails() {
        let d = eval_gf("(1+t)^2", 10).unwrap();
        let g = eval_gf("1/(1-t)", 10).unwrap();
        let f = eval_gf("t", 10).unwrap();
        let report = tp_implication_check(&d, &g, &f, 5, 5).unwrap();
        assert!(report.f_pf);
        assert_eq!(report.quasi_tp.verdict, Verdict::NotTp);
        assert!(!report.premises_hold);
        assert!(!report.conclusion_holds);
        assert!(report.consistent);
    }

    #[test]
    fn implication_with_trivial_initial_column() {
        let d = Series::one(10);
        let g = eval_gf("1/(1-t)", 10).unwrap();
        let f = eval_gf("t/(1-t)", 10).unwrap();
        let report = tp_implication_check(&d, &g, &f, 6, 4).unwrap();
        assert_eq!(report.pf_mode, PfMode::WindowScreen);
        assert!(report.f_pf);
        assert!(report.premises_hold);
        assert!(report.conclusion_holds);
        assert!(report.consistent);
    }

    #[test]
    fn implication_screen_rejects_alternating_f() {
        let d = Series::one(10);
        let g = Series::one(10);
        let f = eval_gf("t*(1+t^2)", 10).unwrap();
        let report = tp_implication_check(&d, &g, &f, 6, 4).unwrap();
        assert_eq!(report.pf_mode, PfMode::WindowScreen);
        assert!(!report.f_pf);
        assert!(!report.premises_hold);
        assert!(report.consistent);
    }

    #[test]
    fn reports_serialize_with_fraction_values() {
        let d = eval_gf("(1+t)^2", 10).unwrap();
        let g = eval_gf("1/(1-t)", 10).unwrap();
        let f = eval_gf("t", 10).unwrap();
        let report = tp_implication_check(&d, &g, &f, 5, 5).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["pf_mode"], "exact-polynomial");
        assert_eq!(json["consistent"], true);
        assert_eq!(json["quasi_tp"]["verdict"], "NotTP");
        assert_eq!(json["quasi_tp"]["witness"]["value"], "-1");
    }
}
