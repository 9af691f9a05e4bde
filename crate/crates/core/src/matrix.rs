//! Finite exact-rational matrix windows.
//!
//! A `MatrixWindow` is the computable view of an infinite lower-triangular
//! array: R rows and C columns of `Rational` entries. Windows serialize to
//! JSON (`{"rows": R, "cols": C, "entries": [["p/q", ...], ...]}`) and to
//! CSV with one fraction per cell; both round-trip bit-exactly.

use crate::rational::{format_rational, parse_rational, Rational};
use crate::series::Series;
use num::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("matrix parse error: {0}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq)]
pub struct MatrixWindow {
    rows: usize,
    cols: usize,
    data: Vec<Rational>, // row-major
}

impl MatrixWindow {
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "window dimensions must be positive");
        MatrixWindow { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatrixWindow::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(MatrixError::Shape("a window needs at least one row and column".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(MatrixError::Shape("ragged rows".into()));
        }
        let r = rows.len();
        Ok(MatrixWindow { rows: r, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_rows_i64(rows: &[&[i64]]) -> Self {
        MatrixWindow::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| crate::rational::rat_int(n)).collect())
                .collect(),
        )
        .unwrap()
    }

    /// Column j holds the first `rows` coefficients of `columns[j]`.
    /// Every column series must reach order rows-1; nothing is zero-padded.
    pub fn from_columns(columns: &[Series], rows: usize) -> Result<Self, crate::series::SeriesError> {
        assert!(!columns.is_empty() && rows >= 1);
        for c in columns {
            c.require_order(rows - 1)?;
        }
        let cols = columns.len();
        let mut m = MatrixWindow::zero(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            for i in 0..rows {
                *m.get_mut(i, j) = c.coeff(i).clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }

    pub fn mul(&self, rhs: &MatrixWindow) -> Result<MatrixWindow, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = MatrixWindow::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Entry-selected submatrix; indices need not be contiguous but must be in bounds.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> MatrixWindow {
        assert!(!rows.is_empty() && !cols.is_empty(), "empty selection");
        let mut m = MatrixWindow::zero(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                *m.get_mut(a, b) = self.get(i, j).clone();
            }
        }
        m
    }

    /// Rows i0..i0+r, cols j0..j0+c as a window.
    pub fn block(&self, i0: usize, j0: usize, r: usize, c: usize) -> MatrixWindow {
        let rows: Vec<usize> = (i0..i0 + r).collect();
        let cols: Vec<usize> = (j0..j0 + c).collect();
        self.select(&rows, &cols)
    }

    /// Block-diagonal stacking: self in the top-left, other in the bottom-right.
    pub fn direct_sum(&self, other: &MatrixWindow) -> MatrixWindow {
        let mut m = MatrixWindow::zero(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.get_mut(i, j) = self.get(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                *m.get_mut(self.rows + i, self.cols + j) = other.get(i, j).clone();
            }
        }
        m
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    /// Exact determinant by rational Gaussian elimination. Panics if not square.
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square window");
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> =
            (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            let p = a[col][col].clone();
            det *= &p;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] / &p;
                for c in col..n {
                    let sub = &factor * &a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
        det
    }

    /// One fraction per cell, comma separated, one line per row. No header.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols).map(|j| format_rational(self.get(i, j))).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, MatrixError> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let mut row = Vec::new();
            for cell in line.split(',') {
                row.push(parse_rational(cell).map_err(|e| {
                    MatrixError::Parse(format!("line {}: {e}", lineno + 1))
                })?);
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(MatrixError::Parse("no rows".into()));
        }
        MatrixWindow::from_rows(rows)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl Serialize for MatrixWindow {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| format_rational(self.get(i, j))).collect())
            .collect();
        MatrixJson { rows: self.rows, cols: self.cols, entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatrixWindow {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(d)?;
        if raw.entries.len() != raw.rows {
            return Err(D::Error::custom(format!(
                "declared {} rows but found {}",
                raw.rows,
                raw.entries.len()
            )));
        }
        let mut rows = Vec::with_capacity(raw.rows);
        for (i, line) in raw.entries.iter().enumerate() {
            if line.len() != raw.cols {
                return Err(D::Error::custom(format!(
                    "row {i} has {} entries, expected {}",
                    line.len(),
                    raw.cols
                )));
            }
            let mut row = Vec::with_capacity(raw.cols);
            for cell in line {
                row.push(parse_rational(cell).map_err(D::Error::custom)?);
            }
            rows.push(row);
        }
        MatrixWindow::from_rows(rows).map_err(D::Error::custom)
    }
}

impl fmt::Display for MatrixWindow {
    /// Right-aligned table of exact fractions.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| format_rational(self.get(i, j))).collect())
            .collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(1))
            .collect();
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{cell:>width$}", width = widths[j])?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MatrixWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixWindow {}x{}:", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn construction_and_access() {
        let m = MatrixWindow::from_rows_i64(&[&[1, 0], &[2, 3]]);
        assert_eq!(m.get(1, 0), &rat_int(2));
        assert!(m.is_lower_triangular());
        let id = MatrixWindow::identity(3);
        assert_eq!(id.get(2, 2), &rat_int(1));
        assert_eq!(id.get(0, 1), &rat_int(0));
    }

    #[test]
    fn from_columns_respects_order() {
        let c0 = Series::from_i64(&[1, 1, 1]);
        let c1 = Series::from_i64(&[0, 1, 2]);
        let m = MatrixWindow::from_columns(&[c0, c1.clone()], 3).unwrap();
        assert_eq!(m.get(2, 1), &rat_int(2));
        assert!(MatrixWindow::from_columns(&[c1], 4).is_err());
    }

    #[test]
    fn multiply() {
        let a = MatrixWindow::from_rows_i64(&[&[1, 0], &[1, 1]]);
        let b = MatrixWindow::from_rows_i64(&[&[2, 0], &[3, 4]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, MatrixWindow::from_rows_i64(&[&[2, 0], &[5, 4]]));
        assert!(a.mul(&MatrixWindow::zero(3, 3)).is_err());
    }

    #[test]
    fn determinants() {
        assert_eq!(MatrixWindow::identity(4).det(), rat_int(1));
        let m = MatrixWindow::from_rows_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.det(), rat_int(-1));
        let s = MatrixWindow::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 4), rat(1, 5)],
        ])
        .unwrap();
        assert_eq!(s.det(), rat(1, 60));
        let singular = MatrixWindow::from_rows_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.det(), rat_int(0));
    }

    #[test]
    fn select_and_direct_sum() {
        let m = MatrixWindow::from_rows_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let s = m.select(&[0, 2], &[1, 2]);
        assert_eq!(s, MatrixWindow::from_rows_i64(&[&[2, 3], &[8, 9]]));
        let one = MatrixWindow::from_rows_i64(&[&[1]]);
        let d = one.direct_sum(&MatrixWindow::identity(2));
        assert_eq!(d, MatrixWindow::identity(3));
        assert_eq!(m.block(1, 0, 2, 2), MatrixWindow::from_rows_i64(&[&[4, 5], &[7, 8]]));
    }

    #[test]
    fn json_round_trip() {
        let m = MatrixWindow::from_rows(vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat(13, 3), rat(-97, 3)],
        ])
        .unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.contains("\"13/3\""));
        let back: MatrixWindow = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        let bad = r#"{"rows":2,"cols":2,"entries":[["1","0"]]}"#;
        assert!(serde_json::from_str::<MatrixWindow>(bad).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let m = MatrixWindow::from_rows(vec![
            vec![rat_int(1), rat_int(0), rat_int(0)],
            vec![rat(1, 2), rat(2, 3), rat_int(-4)],
        ])
        .unwrap();
        let text = m.to_csv();
        assert_eq!(text, "1,0,0\n1/2,2/3,-4\n");
        assert_eq!(MatrixWindow::from_csv(&text).unwrap(), m);
        assert!(MatrixWindow::from_csv("1,2\n3\n").is_err());
        assert!(MatrixWindow::from_csv("").is_err());
    }

    #[test]
    fn display_alignment() {
        let m = MatrixWindow::from_rows(vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat(13, 3), rat_int(1)],
        ])
        .unwrap();
        assert_eq!(m.to_string(), "[   1  0]\n[13/3  1]");
    }
}
