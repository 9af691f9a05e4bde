//! Exact-arithmetic construction and analysis of Riordan-type arrays.
//!
//! The crate builds finite windows of Riordan, quasi-Riordan and
//! almost-Riordan arrays from truncated rational power series, extracts
//! their A/Z/W characteristic sequences and production matrices, and
//! checks total positivity both by exact minor enumeration and by
//! closed-form criteria for tridiagonal production matrices.
//!
//! All arithmetic is exact: coefficients, matrix entries, determinants and
//! verdicts are arbitrary-precision rationals end to end.

pub mod arrays;
pub mod expr;
pub mod matrix;
pub mod rational;
pub mod sequences;
pub mod series;
pub mod tp;
pub mod verify;

pub use arrays::{
    verify_quasi_factorization, AlmostRiordanSpec, ArrayError, QuasiRiordanSpec, RiordanSpec,
};
pub use expr::{eval_gf, parse_expr, Expr, ExprError};
pub use matrix::{MatrixError, MatrixWindow};
pub use rational::{parse_rational, rat, rat_int, Rational};
pub use sequences::{
    azw_from_almost, azw_from_quasi, check_production_identity, extract_production,
    production_from_azw, recover_from_tridiagonal, AzwTriple, SeqError, TridiagonalProduction,
};
pub use series::{Series, SeriesError};
pub use tp::{
    count_enumerated_minors, det_j, det_t_closed, det_t_recurrence, find_negative_t,
    first_negative_contiguous_minor, is_pf_polynomial, jacobi_tp_check, minor, pf_window_check,
    tp_check, tp_check_one_root, tp_check_two_roots, tp_verdict, ContiguousMinorWitness, Strategy,
    TpError, TpReport, TriVerdict, Verdict, Witness,
};
pub use verify::{
    corpus_entries, grid_to_csv, linear_d_window, region_check, region_grid, run_corpus,
    tg_plus_alpha_window, tp_implication_check, tridiagonal_params, CorpusEntry, CorpusReport,
    GridPoint, ImplicationReport, PfMode, RegionError, RegionFamily, VerifyError,
};
