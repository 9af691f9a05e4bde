//! Total positivity checks: exhaustive minor enumeration on windows, the
//! fast path for tridiagonal matrices, and closed-form criteria for
//! tridiagonal production data.
//!
//! "TP" throughout means totally nonnegative: every minor of every order is
//! >= 0. A window check can certify a finite section only, hence the
//! WindowTP wording.

use crate::matrix::MatrixWindow;
use crate::rational::{pow_rational, rat_int, sqrt_exact, Rational};
use crate::sequences::TridiagonalProduction;
use crate::series::Series;
use num::{BigInt, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TpError {
    #[error("index sets must be nonempty, strictly increasing, equal-length, and in bounds")]
    BadIndexSets,
    #[error("matrix is not a square tridiagonal window")]
    ShapeMismatch,
    #[error("no negative value found within the first {limit} terms")]
    NotFoundWithinLimit { limit: usize },
    #[error("polynomial degree {degree} is beyond the degree-2 criterion")]
    DegreeTooHigh { degree: usize },
    #[error("{0}")]
    Domain(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "WindowTP")]
    WindowTp,
    #[serde(rename = "NotTP")]
    NotTp,
}

/// A specific negative minor: row and column index sets plus its exact value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    #[serde(with = "crate::rational::frac_str")]
    pub value: Rational,
}

/// Outcome of a window check. `checked_order` is the largest minor order
/// enumerated on success, or the order of the witness minor on failure.
/// A missing witness serializes as an explicit null.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TpReport {
    pub verdict: Verdict,
    pub checked_order: usize,
    pub witness: Option<Witness>,
}

impl TpReport {
    pub fn is_tp(&self) -> bool {
        self.verdict == Verdict::WindowTp
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Every k-subset of rows against every k-subset of columns.
    All,
    /// Contiguous row blocks against every k-subset of columns.
    ContiguousRows,
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Strategy::All),
            "contiguous-rows" => Ok(Strategy::ContiguousRows),
            other => Err(format!(
                "unknown strategy {other:?}, expected \"all\" or \"contiguous-rows\""
            )),
        }
    }
}

/// Exact minor on the given index sets (strictly increasing, equal length).
pub fn minor(m: &MatrixWindow, rows: &[usize], cols: &[usize]) -> Result<Rational, TpError> {
    let ok = |idx: &[usize], bound: usize| {
        !idx.is_empty() && idx.windows(2).all(|w| w[0] < w[1]) && *idx.last().unwrap() < bound
    };
    if rows.len() != cols.len() || !ok(rows, m.rows()) || !ok(cols, m.cols()) {
        return Err(TpError::BadIndexSets);
    }
    Ok(m.select(rows, cols).det())
}

/// Lexicographic k-subsets of 0..n.
struct Combinations {
    n: usize,
    k: usize,
    state: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        let state = if k <= n { Some((0..k).collect()) } else { None };
        Combinations { n, k, state }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.state.take()?;
        let out = current.clone();
        let mut next = current;
        // rightmost index that can still move right
        let mut i = self.k;
        loop {
            if i == 0 {
                return Some(out);
            }
            i -= 1;
            if next[i] < self.n - (self.k - i) {
                next[i] += 1;
                for j in i + 1..self.k {
                    next[j] = next[j - 1] + 1;
                }
                self.state = Some(next);
                return Some(out);
            }
        }
    }
}

fn row_sets(m_rows: usize, k: usize, strategy: Strategy) -> Box<dyn Iterator<Item = Vec<usize>>> {
    match strategy {
        Strategy::All => Box::new(Combinations::new(m_rows, k)),
        Strategy::ContiguousRows => {
            Box::new((0..=m_rows.saturating_sub(k)).map(move |s| (s..s + k).collect()))
        }
    }
}

/// Enumerates minors in (order, row set, column set) lexicographic order and
/// reports the first negative one, if any. `max_order` is clamped to the
/// window dimensions.
pub fn tp_check(m: &MatrixWindow, max_order: usize, strategy: Strategy) -> TpReport {
    let k_max = max_order.min(m.rows()).min(m.cols());
    for k in 1..=k_max {
        for rows in row_sets(m.rows(), k, strategy) {
            for cols in Combinations::new(m.cols(), k) {
                let value = m.select(&rows, &cols).det();
                if value.is_negative() {
                    return TpReport {
                        verdict: Verdict::NotTp,
                        checked_order: k,
                        witness: Some(Witness { rows, cols, value }),
                    };
                }
            }
        }
    }
    TpReport {
        verdict: Verdict::WindowTp,
        checked_order: k_max,
        witness: None,
    }
}

fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        match acc.checked_mul((n - i) as u128) {
            Some(v) => acc = v / (i as u128 + 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// How many minors `tp_check` would evaluate, saturating at u128::MAX.
pub fn count_enumerated_minors(
    rows: usize,
    cols: usize,
    max_order: usize,
    strategy: Strategy,
) -> u128 {
    let k_max = max_order.min(rows).min(cols);
    let mut total: u128 = 0;
    for k in 1..=k_max {
        let row_count = match strategy {
            Strategy::All => binomial_u128(rows, k),
            Strategy::ContiguousRows => (rows - k + 1) as u128,
        };
        total = total.saturating_add(row_count.saturating_mul(binomial_u128(cols, k)));
    }
    total
}

/// Fast check for a square tridiagonal window. A tridiagonal matrix with
/// nonnegative entries is totally nonnegative exactly when all its minors on
/// consecutive index sets are nonnegative, so only entries and contiguous
/// principal minors are examined. A negative entry is reported as a 1x1
/// witness before the shape is enforced; a non-tridiagonal matrix with
/// nonnegative entries is a ShapeMismatch error.
pub fn jacobi_tp_check(m: &MatrixWindow) -> Result<TpReport, TpError> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if m.get(i, j).is_negative() {
                return Ok(TpReport {
                    verdict: Verdict::NotTp,
                    checked_order: 1,
                    witness: Some(Witness {
                        rows: vec![i],
                        cols: vec![j],
                        value: m.get(i, j).clone(),
                    }),
                });
            }
        }
    }
    let n = m.rows();
    if m.cols() != n {
        return Err(TpError::ShapeMismatch);
    }
    for i in 0..n {
        for j in 0..n {
            if i.abs_diff(j) > 1 && !m.get(i, j).is_zero() {
                return Err(TpError::ShapeMismatch);
            }
        }
    }
    // continuants per starting index: d[s][k] = minor on rows/cols s..s+k
    let mut table: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for s in 0..n {
        let len = n - s;
        let mut d = Vec::with_capacity(len + 1);
        d.push(Rational::one());
        for k in 1..=len {
            let last = s + k - 1;
            let mut v = m.get(last, last) * &d[k - 1];
            if k >= 2 {
                v -= m.get(last - 1, last) * m.get(last, last - 1) * &d[k - 2];
            }
            d.push(v);
        }
        table.push(d);
    }
    for k in 1..=n {
        for s in 0..=n - k {
            if table[s][k].is_negative() {
                return Ok(TpReport {
                    verdict: Verdict::NotTp,
                    checked_order: k,
                    witness: Some(Witness {
                        rows: (s..s + k).collect(),
                        cols: (s..s + k).collect(),
                        value: table[s][k].clone(),
                    }),
                });
            }
        }
    }
    Ok(TpReport {
        verdict: Verdict::WindowTp,
        checked_order: n,
        witness: None,
    })
}

/// T_n = det of the n x n band continuant with diagonal a1, superdiagonal
/// a0, subdiagonal a2: T_0 = 1, T_1 = a1, T_n = a1 T_(n-1) - a0 a2 T_(n-2).
pub fn det_t_recurrence(a0: &Rational, a1: &Rational, a2: &Rational, n: usize) -> Rational {
    let q = a0 * a2;
    let mut prev = Rational::one();
    let mut cur = a1.clone();
    match n {
        0 => return prev,
        1 => return cur,
        _ => {}
    }
    for _ in 2..=n {
        let next = a1 * &cur - &q * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Same value through root formulas where the discriminant allows it:
/// a1^2 = 4 a0 a2 gives (n+1)(a1/2)^n; a perfect-square discriminant s^2 > 0
/// gives (r+^(n+1) - r-^(n+1))/s with r+- = (a1 +- s)/2. Other discriminants
/// fall back to the recurrence.
pub fn det_t_closed(a0: &Rational, a1: &Rational, a2: &Rational, n: usize) -> Rational {
    let disc = a1 * a1 - rat_int(4) * a0 * a2;
    if disc.is_zero() {
        let half = a1 / rat_int(2);
        return Rational::from_integer(BigInt::from(n as u64 + 1)) * pow_rational(&half, n as i64);
    }
    if disc.is_positive() {
        if let Some(s) = sqrt_exact(&disc) {
            let two = rat_int(2);
            let rp = (a1 + &s) / &two;
            let rm = (a1 - &s) / &two;
            let e = n as i64 + 1;
            return (pow_rational(&rp, e) - pow_rational(&rm, e)) / s;
        }
    }
    det_t_recurrence(a0, a1, a2, n)
}

/// det of the leading n x n window of the production matrix built from
/// tridiagonal data: w0 for n = 1, then c2 T_(n-2) - w0 z2 a0 T_(n-3) with
/// c2 = w0 z1 - w1 z0 (T_(-1) taken as 0).
pub fn det_j(p: &TridiagonalProduction, n: usize) -> Rational {
    assert!(n >= 1);
    let c2 = &p.w0 * &p.z1 - &p.w1 * &p.z0;
    match n {
        1 => p.w0.clone(),
        2 => c2,
        _ => {
            let t2 = det_t_closed(&p.a0, &p.a1, &p.a2, n - 2);
            let t3 = det_t_closed(&p.a0, &p.a1, &p.a2, n - 3);
            c2 * t2 - &p.w0 * &p.z2 * &p.a0 * t3
        }
    }
}

/// First n with T_n < 0, iterating the recurrence. The default limit comes
/// from the oscillation rate of the continuant: with a negative discriminant
/// T_n is R^n sin((n+1)h)/sin(h), so the first sign change lands before
/// 2*pi/h steps (an f64 estimate, padded).
pub fn find_negative_t(
    a0: &Rational,
    a1: &Rational,
    a2: &Rational,
    limit: Option<usize>,
) -> Result<(usize, Rational), TpError> {
    let disc = a1 * a1 - rat_int(4) * a0 * a2;
    let limit = match limit {
        Some(l) => l,
        None => {
            if !disc.is_negative() {
                return Err(TpError::Domain(
                    "nonnegative discriminant: the continuant never changes sign".into(),
                ));
            }
            let neg = (-&disc).to_f64();
            let a1f = a1.to_f64();
            match (neg, a1f) {
                (Some(neg), Some(a1f)) => {
                    let theta = neg.sqrt().atan2(a1f);
                    ((2.0 * std::f64::consts::PI / theta).ceil() as usize).saturating_add(4)
                }
                _ => 1_000_000,
            }
        }
    };
    let q = a0 * a2;
    let mut prev = Rational::one();
    let mut cur = a1.clone();
    if cur.is_negative() {
        return Ok((1, cur));
    }
    for n in 2..=limit {
        let next = a1 * &cur - &q * &prev;
        if next.is_negative() {
            return Ok((n, next));
        }
        prev = cur;
        cur = next;
    }
    Err(TpError::NotFoundWithinLimit { limit })
}

/// Verdict of the closed-form tridiagonal criteria. `Inapplicable` flags
/// data outside a criterion's hypotheses, never a positivity judgment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TriVerdict {
    Tp,
    NotTp,
    Inapplicable,
}

fn any_negative(p: &TridiagonalProduction) -> bool {
    p.params().iter().any(|r| r.is_negative())
}

/// Decides x*sqrt(disc) >= m exactly for x >= 0 and disc > 0.
fn sqrt_ineq_holds(x: &Rational, disc: &Rational, m: &Rational) -> bool {
    debug_assert!(!x.is_negative() && disc.is_positive());
    if !m.is_positive() {
        return true;
    }
    x * x * disc >= m * m
}

/// Distinct positive roots case (nonnegative data, positive discriminant).
/// The minor families on consecutive index sets reduce to three scalar
/// conditions through the limit ratio r+ of consecutive continuants:
///   c2 >= 0,  c2 r+ >= w0 z2 a0,  z1 r+ >= z2 a0.
/// Comparisons against r+ = (a1 + sqrt(disc))/2 are decided exactly by
/// squaring.
pub fn tp_check_two_roots(p: &TridiagonalProduction) -> TriVerdict {
    if any_negative(p) {
        return TriVerdict::Inapplicable;
    }
    let disc = p.discriminant();
    if !disc.is_positive() {
        return TriVerdict::Inapplicable;
    }
    let c2 = &p.w0 * &p.z1 - &p.w1 * &p.z0;
    if c2.is_negative() {
        return TriVerdict::NotTp;
    }
    let two = rat_int(2);
    // c2 r+ >= w0 z2 a0  <=>  c2 sqrt(disc) >= 2 w0 z2 a0 - c2 a1
    let m_col0 = &two * &p.w0 * &p.z2 * &p.a0 - &c2 * &p.a1;
    if !sqrt_ineq_holds(&c2, &disc, &m_col0) {
        return TriVerdict::NotTp;
    }
    // z1 r+ >= z2 a0  <=>  z1 sqrt(disc) >= 2 z2 a0 - z1 a1
    let m_row1 = &two * &p.z2 * &p.a0 - &p.z1 * &p.a1;
    if !sqrt_ineq_holds(&p.z1, &disc, &m_row1) {
        return TriVerdict::NotTp;
    }
    TriVerdict::Tp
}

/// Repeated root case (nonnegative data, zero discriminant): the limit
/// ratio is a1/2 and the same three conditions become polynomial:
///   c2 >= 0,  c2 a1 - 2 w0 z2 a0 >= 0,  z1 a1 - 2 z2 a0 >= 0.
/// These stay exact at a1 = 0, where the continuants collapse.
pub fn tp_check_one_root(p: &TridiagonalProduction) -> TriVerdict {
    if any_negative(p) {
        return TriVerdict::Inapplicable;
    }
    if !p.discriminant().is_zero() {
        return TriVerdict::Inapplicable;
    }
    let two = rat_int(2);
    let c2 = &p.w0 * &p.z1 - &p.w1 * &p.z0;
    let ok = !c2.is_negative()
        && !(&c2 * &p.a1 - &two * &p.w0 * &p.z2 * &p.a0).is_negative()
        && !(&p.z1 * &p.a1 - &two * &p.z2 * &p.a0).is_negative();
    if ok {
        TriVerdict::Tp
    } else {
        TriVerdict::NotTp
    }
}

/// Full dispatcher: negative data is out of scope for the closed forms, a
/// negative discriminant forces a negative continuant (hence NotTp), and
/// the two root cases go to their criteria.
pub fn tp_verdict(p: &TridiagonalProduction) -> TriVerdict {
    if any_negative(p) {
        return TriVerdict::Inapplicable;
    }
    let disc = p.discriminant();
    if disc.is_negative() {
        TriVerdict::NotTp
    } else if disc.is_zero() {
        tp_check_one_root(p)
    } else {
        tp_check_two_roots(p)
    }
}

/// A negative minor of the infinite production matrix on a consecutive
/// index block: rows and columns start..start+size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContiguousMinorWitness {
    pub start: usize,
    pub size: usize,
    pub value: Rational,
}

fn one_root_continuant(a1: &Rational, n: usize) -> Rational {
    let half = a1 / rat_int(2);
    Rational::from_integer(BigInt::from(n as u64 + 1)) * pow_rational(&half, n as i64)
}

/// Smallest integer strictly greater than q.
fn next_int_above(q: &Rational) -> usize {
    let f = q.floor().to_integer();
    let f = f.to_usize().unwrap_or(0);
    f + 1
}

/// Produces an exact negative contiguous principal minor of the production
/// matrix when `tp_verdict` is NotTp. The failing family determines the
/// block: the leading minors D(0,n) = c2 T_(n-2) - w0 z2 a0 T_(n-3), the
/// second-row minors D(1,n) = z1 T_(n-1) - z2 a0 T_(n-2), or the plain
/// continuants T_n (start >= 2). Negative-discriminant data fails through
/// T_n; repeated roots have a closed-form first failing size; distinct
/// roots are scanned along the (monotone) normalized minor sequence.
pub fn first_negative_contiguous_minor(
    p: &TridiagonalProduction,
) -> Result<ContiguousMinorWitness, TpError> {
    if any_negative(p) {
        return Err(TpError::Domain(
            "negative production data is outside the contiguous-minor criteria".into(),
        ));
    }
    let c2 = &p.w0 * &p.z1 - &p.w1 * &p.z0;
    if c2.is_negative() {
        return Ok(ContiguousMinorWitness {
            start: 0,
            size: 2,
            value: c2,
        });
    }
    let disc = p.discriminant();
    if disc.is_negative() {
        let (n, value) = find_negative_t(&p.a0, &p.a1, &p.a2, None)?;
        return Ok(ContiguousMinorWitness {
            start: 2,
            size: n,
            value,
        });
    }
    let w0z2a0 = &p.w0 * &p.z2 * &p.a0;
    let z2a0 = &p.z2 * &p.a0;
    if disc.is_zero() {
        let two = rat_int(2);
        let x0 = &c2 * &p.a1 / &two;
        let x1 = &p.z1 * &p.a1 / &two;
        let mut candidates: Vec<(usize, usize)> = Vec::new();
        if x0 < w0z2a0 {
            // first n >= 3 with c2 (n-1) (a1/2)^(n-2) < w0 z2 a0 (n-2) (a1/2)^(n-3)
            let n = if p.a1.is_zero() {
                3
            } else {
                let q = (&two * &w0z2a0 - &x0) / (&w0z2a0 - &x0);
                next_int_above(&q).max(3)
            };
            candidates.push((n, 0));
        }
        if x1 < z2a0 {
            let n = if p.a1.is_zero() {
                2
            } else {
                let q = &z2a0 / (&z2a0 - &x1);
                next_int_above(&q).max(2)
            };
            candidates.push((n, 1));
        }
        let &(n, start) = candidates
            .iter()
            .min()
            .ok_or_else(|| TpError::Domain("the data passes the repeated-root criterion".into()))?;
        let value = if start == 0 {
            &c2 * one_root_continuant(&p.a1, n - 2) - &w0z2a0 * one_root_continuant(&p.a1, n - 3)
        } else {
            &p.z1 * one_root_continuant(&p.a1, n - 1) - &z2a0 * one_root_continuant(&p.a1, n - 2)
        };
        debug_assert!(value.is_negative());
        return Ok(ContiguousMinorWitness { start, size: n, value });
    }
    // distinct roots: walk T_n once, checking both families at each size
    let q = &p.a0 * &p.a2;
    let limit = 100_000usize;
    let mut t_prev2 = Rational::zero(); // T_(n-3) when size = n
    let mut t_prev = Rational::one(); // T_0
    let mut t_cur = p.a1.clone(); // T_1
    for n in 2..=limit {
        // size n uses T_(n-1) = t_cur at the row-1 family, T_(n-2), T_(n-3)
        if n >= 3 {
            let d0 = &c2 * &t_prev - &w0z2a0 * &t_prev2;
            if d0.is_negative() {
                return Ok(ContiguousMinorWitness {
                    start: 0,
                    size: n,
                    value: d0,
                });
            }
        }
        let d1 = &p.z1 * &t_cur - &z2a0 * &t_prev;
        if d1.is_negative() {
            return Ok(ContiguousMinorWitness {
                start: 1,
                size: n,
                value: d1,
            });
        }
        let t_next = &p.a1 * &t_cur - &q * &t_prev;
        t_prev2 = t_prev;
        t_prev = t_cur;
        t_cur = t_next;
    }
    Err(TpError::NotFoundWithinLimit { limit })
}

/// Degree <= 2 criterion for a polynomial generating function with
/// totally nonnegative Toeplitz windows: nonnegative coefficients and, at
/// degree 2, a nonnegative discriminant (real roots). The zero polynomial
/// is rejected; higher degrees are out of scope.
pub fn is_pf_polynomial(s: &Series) -> Result<bool, TpError> {
    let degree = match s.coeffs().iter().rposition(|c| !c.is_zero()) {
        None => return Ok(false),
        Some(d) => d,
    };
    if degree > 2 {
        return Err(TpError::DegreeTooHigh { degree });
    }
    if s.coeffs().iter().any(|c| c.is_negative()) {
        return Ok(false);
    }
    if degree <= 1 {
        return Ok(true);
    }
    let c0 = s.coeff(0);
    let c1 = s.coeff(1);
    let c2 = s.coeff(2);
    Ok(!(c1 * c1 - rat_int(4) * c0 * c2).is_negative())
}

/// Window screen for arbitrary coefficient sequences: checks the rows x rows
/// lower Toeplitz section m[i][j] = s_(i-j) by minor enumeration.
pub fn pf_window_check(s: &Series, rows: usize, max_order: usize) -> Result<TpReport, TpError> {
    s.require_order(rows.saturating_sub(1))
        .map_err(|e| TpError::Domain(e.to_string()))?;
    let mut m = MatrixWindow::zero(rows, rows);
    for i in 0..rows {
        for j in 0..=i {
            *m.get_mut(i, j) = s.coeff(i - j).clone();
        }
    }
    Ok(tp_check(&m, max_order, Strategy::All))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn tri(a: [i64; 3], z: [i64; 3], w: [i64; 2]) -> TridiagonalProduction {
        TridiagonalProduction::from_i64(a, z, w)
    }

    #[test]
    fn combinations_enumerate_lexicographically() {
        let got: Vec<Vec<usize>> = Combinations::new(4, 2).collect();
        assert_eq!(
            got,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(Combinations::new(3, 3).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn minor_validates_index_sets() {
        let m = MatrixWindow::identity(3);
        assert_eq!(minor(&m, &[0, 1], &[1, 2]).unwrap(), rat_int(0));
        assert_eq!(minor(&m, &[0, 2], &[0, 2]).unwrap(), rat_int(1));
        assert_eq!(minor(&m, &[1, 0], &[0, 1]), Err(TpError::BadIndexSets));
        assert_eq!(minor(&m, &[0], &[0, 1]), Err(TpError::BadIndexSets));
        assert_eq!(minor(&m, &[0, 3], &[0, 1]), Err(TpError::BadIndexSets));
        assert_eq!(minor(&m, &[], &[]), Err(TpError::BadIndexSets));
    }

    #[test]
    fn tp_check_finds_first_negative_minor() {
        // lower window with exactly one earliest negative minor at order 3
        let m = MatrixWindow::from_rows_i64(&[
            &[1, 0, 0, 0, 0],
            &[2, 1, 0, 0, 0],
            &[1, 1, 1, 0, 0],
            &[0, 1, 1, 1, 0],
            &[0, 0, 1, 1, 1],
        ]);
        let report = tp_check(&m, 5, Strategy::All);
        assert_eq!(report.verdict, Verdict::NotTp);
        assert_eq!(report.checked_order, 3);
        let w = report.witness.unwrap();
        assert_eq!(w.rows, vec![1, 2, 3]);
        assert_eq!(w.cols, vec![0, 1, 2]);
        assert_eq!(w.value, rat_int(-1));
    }

    #[test]
    fn tp_check_passes_pascal() {
        let mut m = MatrixWindow::zero(6, 6);
        for i in 0..6 {
            *m.get_mut(i, 0) = rat_int(1);
            for j in 1..=i {
                let v = m.get(i - 1, j - 1) + m.get(i - 1, j);
                *m.get_mut(i, j) = v;
            }
        }
        let report = tp_check(&m, 6, Strategy::All);
        assert_eq!(report.verdict, Verdict::WindowTp);
        assert_eq!(report.checked_order, 6);
        assert!(report.witness.is_none());
        let contiguous = tp_check(&m, 6, Strategy::ContiguousRows);
        assert_eq!(contiguous.verdict, Verdict::WindowTp);
    }

    #[test]
    fn minor_counts() {
        assert_eq!(count_enumerated_minors(4, 4, 4, Strategy::All), 69);
        // sum over k of (5-k)*C(4,k) for a 4x4... rows=4: (4-k+1)*C(4,k)
        assert_eq!(
            count_enumerated_minors(4, 4, 4, Strategy::ContiguousRows),
            4 * 4 + 3 * 6 + 2 * 4 + 1
        );
        assert_eq!(count_enumerated_minors(4, 4, 2, Strategy::All), 52);
        assert!(count_enumerated_minors(200, 200, 200, Strategy::All) == u128::MAX);
    }

    #[test]
    fn jacobi_check_accepts_tp_tridiagonal() {
        let j = tri([1, 2, 1], [1, 1, 1], [1, 0]).production_window(8);
        let report = jacobi_tp_check(&j).unwrap();
        assert_eq!(report.verdict, Verdict::WindowTp);
        assert_eq!(report.checked_order, 8);
    }

    #[test]
    fn jacobi_check_reports_negative_entry_before_shape() {
        // dense square matrix with a negative entry: entry wins, no shape error
        let m = MatrixWindow::from_rows_i64(&[&[3, 1, 5], &[-9, -2, 2], &[4, 1, 1]]);
        let report = jacobi_tp_check(&m).unwrap();
        assert_eq!(report.verdict, Verdict::NotTp);
        let w = report.witness.unwrap();
        assert_eq!((w.rows, w.cols), (vec![1], vec![0]));
        assert_eq!(w.value, rat_int(-9));
    }

    #[test]
    fn jacobi_check_rejects_shape() {
        let off_band = MatrixWindow::from_rows_i64(&[&[1, 0, 5], &[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(jacobi_tp_check(&off_band), Err(TpError::ShapeMismatch));
        let rect = MatrixWindow::from_rows_i64(&[&[1, 0], &[1, 1], &[0, 1]]);
        assert_eq!(jacobi_tp_check(&rect), Err(TpError::ShapeMismatch));
    }

    #[test]
    fn jacobi_check_finds_contiguous_principal_failure() {
        let j = tri([1, 3, 1], [1, 1, 1], [1, 2]).production_window(6);
        // c2 = 1*1 - 2*1 = -1 shows up as the leading 2x2 minor
        let report = jacobi_tp_check(&j).unwrap();
        assert_eq!(report.verdict, Verdict::NotTp);
        let w = report.witness.unwrap();
        assert_eq!(w.rows, vec![0, 1]);
        assert_eq!(w.value, rat_int(-1));
    }

    #[test]
    fn det_t_values() {
        // a = (3, 5, 3): 1, 5, 16, 35, 31, -160
        let (a0, a1, a2) = (rat_int(3), rat_int(5), rat_int(3));
        let expected = [1i64, 5, 16, 35, 31, -160];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(det_t_recurrence(&a0, &a1, &a2, n), rat_int(e));
            assert_eq!(det_t_closed(&a0, &a1, &a2, n), rat_int(e));
        }
        assert_eq!(
            find_negative_t(&a0, &a1, &a2, None).unwrap(),
            (5, rat_int(-160))
        );
    }

    #[test]
    fn det_t_closed_forms_match_recurrence() {
        // repeated root: a = (1, 2, 1)
        for n in 0..12 {
            assert_eq!(
                det_t_closed(&rat_int(1), &rat_int(2), &rat_int(1), n),
                det_t_recurrence(&rat_int(1), &rat_int(2), &rat_int(1), n)
            );
        }
        // rational distinct roots: a = (1, 5/2, 1), disc = 9/4
        let (a0, a1, a2) = (rat_int(1), rat(5, 2), rat_int(1));
        for n in 0..12 {
            assert_eq!(det_t_closed(&a0, &a1, &a2, n), det_t_recurrence(&a0, &a1, &a2, n));
        }
        // irrational roots fall back: a = (1, 3, 1)
        assert_eq!(
            det_t_closed(&rat_int(1), &rat_int(3), &rat_int(1), 7),
            det_t_recurrence(&rat_int(1), &rat_int(3), &rat_int(1), 7)
        );
    }

    #[test]
    fn find_negative_t_cases() {
        let (n, v) = find_negative_t(&rat_int(2), &rat_int(3), &rat_int(5), None).unwrap();
        assert_eq!((n, v), (2, rat_int(-1)));
        let (n, v) = find_negative_t(&rat_int(1), &rat_int(0), &rat_int(1), None).unwrap();
        assert_eq!((n, v), (2, rat_int(-1)));
        assert!(matches!(
            find_negative_t(&rat_int(1), &rat_int(2), &rat_int(1), None),
            Err(TpError::Domain(_))
        ));
        assert_eq!(
            find_negative_t(&rat_int(3), &rat_int(5), &rat_int(3), Some(3)),
            Err(TpError::NotFoundWithinLimit { limit: 3 })
        );
    }

    #[test]
    fn det_j_matches_direct_minor() {
        let p = tri([1, 3, 1], [1, 2, 1], [2, 1]);
        for n in 1..=8 {
            let window = p.production_window(n);
            assert_eq!(det_j(&p, n), window.det(), "n = {n}");
        }
    }

    #[test]
    fn two_root_criterion_decides_soundly() {
        assert_eq!(tp_verdict(&tri([1, 3, 1], [1, 1, 1], [1, 0])), TriVerdict::Tp);
        assert_eq!(tp_verdict(&tri([1, 4, 1], [1, 1, 1], [1, 1])), TriVerdict::NotTp);
        // sound on data where the naive root conditions look fine:
        // a=(1,3,1), z=(1,1,1), w=(1,2/3) has det(J_4) = -1/3
        let mut p = tri([1, 3, 1], [1, 1, 1], [1, 0]);
        p.w1 = rat(2, 3);
        assert_eq!(det_j(&p, 4), rat(-1, 3));
        assert_eq!(tp_check_two_roots(&p), TriVerdict::NotTp);
        assert_eq!(tp_verdict(&p), TriVerdict::NotTp);
    }

    #[test]
    fn one_root_criterion_cases() {
        // alpha = 2, beta = 0 boundary: both reduced conditions are 0
        assert_eq!(tp_verdict(&tri([1, 2, 1], [1, 1, 1], [1, 0])), TriVerdict::Tp);
        // alpha = 1, beta = 0 fails the leading-minor condition
        let p = tri([1, 1, 1], [1, 1, 1], [1, 0]);
        let mut q = p.clone();
        q.a2 = rat(1, 4);
        assert_eq!(q.discriminant(), rat_int(0));
        assert_eq!(tp_verdict(&q), TriVerdict::NotTp);
        assert_eq!(det_j(&q, 4), rat(-1, 4));
        // a1 = 0 degenerate repeated root
        let z = tri([0, 0, 0], [1, 1, 1], [1, 0]);
        assert_eq!(tp_verdict(&z), TriVerdict::Tp);
        let z_bad = tri([1, 0, 0], [1, 1, 1], [1, 0]);
        assert_eq!(tp_verdict(&z_bad), TriVerdict::NotTp);
    }

    #[test]
    fn verdict_dispatch() {
        assert_eq!(
            tp_verdict(&tri([1, 1, 1], [1, -1, 1], [1, 0])),
            TriVerdict::Inapplicable
        );
        assert_eq!(
            tp_check_two_roots(&tri([1, 2, 1], [1, 1, 1], [1, 0])),
            TriVerdict::Inapplicable
        );
        assert_eq!(
            tp_check_one_root(&tri([1, 3, 1], [1, 1, 1], [1, 0])),
            TriVerdict::Inapplicable
        );
        // negative discriminant is a definite failure
        assert_eq!(tp_verdict(&tri([3, 5, 3], [1, 1, 1], [1, 0])), TriVerdict::NotTp);
    }

    #[test]
    fn negative_witness_c2() {
        let p = tri([1, 3, 1], [1, 1, 1], [1, 2]);
        let w = first_negative_contiguous_minor(&p).unwrap();
        assert_eq!((w.start, w.size), (0, 2));
        assert_eq!(w.value, rat_int(-1));
    }

    #[test]
    fn negative_witness_oscillating_continuant() {
        let p = tri([3, 5, 3], [1, 1, 1], [1, 0]);
        let w = first_negative_contiguous_minor(&p).unwrap();
        assert_eq!((w.start, w.size), (2, 5));
        assert_eq!(w.value, rat_int(-160));
        // cross-check against the literal window minor
        let need = w.start + w.size;
        let window = p.production_window(need);
        let idx: Vec<usize> = (w.start..need).collect();
        assert_eq!(minor(&window, &idx, &idx).unwrap(), w.value);
    }

    #[test]
    fn negative_witness_one_root() {
        // both minor families fail; the second-row block of size 3 fails first
        let p = tri([1, 1, 1], [1, 1, 1], [1, 0]);
        let mut p = p;
        p.a2 = rat(1, 4);
        let w = first_negative_contiguous_minor(&p).unwrap();
        assert_eq!((w.start, w.size), (1, 3));
        assert_eq!(w.value, rat(-1, 4));
        let window = p.production_window(4);
        let idx = [1usize, 2, 3];
        assert_eq!(minor(&window, &idx, &idx).unwrap(), w.value);
        // the leading 4x4 fails too, just later in the scan
        assert_eq!(det_j(&p, 4), rat(-1, 4));
    }

    #[test]
    fn negative_witness_one_root_leading_family() {
        // z2 = 0 keeps the second-row minors clean, so the leading family
        // carries the failure: c2 a1 < 2 w0 z2 a0 needs z2 > 0, so instead
        // drive c2 down with w1 while keeping it nonnegative
        let p = TridiagonalProduction {
            a0: rat_int(1),
            a1: rat_int(1),
            a2: rat(1, 4),
            z0: rat_int(1),
            z1: rat_int(1),
            z2: rat(1, 2),
            w0: rat_int(1),
            w1: rat(3, 4),
        };
        assert_eq!(p.discriminant(), rat_int(0));
        assert_eq!(tp_verdict(&p), TriVerdict::NotTp);
        let w = first_negative_contiguous_minor(&p).unwrap();
        let need = w.start + w.size;
        let window = p.production_window(need);
        let idx: Vec<usize> = (w.start..need).collect();
        assert_eq!(minor(&window, &idx, &idx).unwrap(), w.value);
        assert!(w.value.is_negative());
    }

    #[test]
    fn negative_witness_two_roots() {
        let mut p = tri([1, 3, 1], [1, 1, 1], [1, 0]);
        p.w1 = rat(2, 3);
        let w = first_negative_contiguous_minor(&p).unwrap();
        assert_eq!((w.start, w.size), (0, 4));
        assert_eq!(w.value, rat(-1, 3));
        let window = p.production_window(4);
        assert_eq!(window.det(), w.value);
    }

    #[test]
    fn negative_witness_row1_family() {
        // push z2 up so the second-row minors fail first
        let p = TridiagonalProduction::from_i64([1, 3, 1], [1, 1, 4], [1, 0]);
        // z1 r+ = (3+sqrt(5))/2 < 4 = z2 a0, so NotTp through the row-1 family
        assert_eq!(tp_verdict(&p), TriVerdict::NotTp);
        let w = first_negative_contiguous_minor(&p).unwrap();
        assert_eq!(w.start, 1);
        assert!(w.value.is_negative());
        let need = w.start + w.size;
        let window = p.production_window(need);
        let idx: Vec<usize> = (w.start..need).collect();
        assert_eq!(minor(&window, &idx, &idx).unwrap(), w.value);
    }

    #[test]
    fn negative_witness_rejects_tp_data() {
        let p = tri([1, 2, 1], [1, 1, 1], [1, 0]);
        assert!(matches!(
            first_negative_contiguous_minor(&p),
            Err(TpError::Domain(_))
        ));
    }

    #[test]
    fn pf_polynomial_criterion() {
        assert!(is_pf_polynomial(&Series::from_i64(&[1, 2, 1])).unwrap());
        assert!(is_pf_polynomial(&Series::from_i64(&[1, 1, 0, 0])).unwrap());
        assert!(is_pf_polynomial(&Series::from_i64(&[2, 0, 0])).unwrap());
        assert!(!is_pf_polynomial(&Series::from_i64(&[1, 1, 1])).unwrap());
        assert!(!is_pf_polynomial(&Series::from_i64(&[1, -1])).unwrap());
        assert!(!is_pf_polynomial(&Series::zero(4)).unwrap());
        assert_eq!(
            is_pf_polynomial(&Series::from_i64(&[1, 3, 3, 1])),
            Err(TpError::DegreeTooHigh { degree: 3 })
        );
    }

    #[test]
    fn pf_window_check_cases() {
        let report = pf_window_check(&Series::from_i64(&[1, 2, 1, 0, 0]), 5, 5).unwrap();
        assert_eq!(report.verdict, Verdict::WindowTp);
        let report = pf_window_check(&Series::from_i64(&[1, 1, 1, 0]), 4, 4).unwrap();
        assert_eq!(report.verdict, Verdict::NotTp);
        let w = report.witness.unwrap();
        assert_eq!(w.rows, vec![1, 2, 3]);
        assert_eq!(w.cols, vec![0, 1, 2]);
        assert_eq!(w.value, rat_int(-1));
    }

    #[test]
    fn report_serialization_shape() {
        let report = TpReport {
            verdict: Verdict::WindowTp,
            checked_order: 4,
            witness: None,
        };
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["verdict"], "WindowTP");
        assert_eq!(json["checked_order"], 4);
        assert!(json["witness"].is_null());
        let report = TpReport {
            verdict: Verdict::NotTp,
            checked_order: 2,
            witness: Some(Witness {
                rows: vec![0, 1],
                cols: vec![0, 2],
                value: rat(-1, 3),
            }),
        };
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["verdict"], "NotTP");
        assert_eq!(json["witness"]["value"], "-1/3");
        let back: TpReport = serde_json::from_value(json).unwrap();
        assert_eq!(back, report);
    }
}
