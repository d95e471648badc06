//! Dense integer matrices with overflow-checked arithmetic.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: alloc::vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(IntegerMatrix { rows: rows.len(), cols, data: rows.iter().flat_map(|r| r.iter().copied()).collect() })
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vec<i64>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::ShapeMismatch(alloc::format!("column of length {} for {} rows", c.len(), rows)));
            }
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(alloc::format!(
                "{}x{} times {}x{}",
                self.rows,
                self.cols,
                other.rows,
                other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = add(out.get(i, j), mul(a, other.get(k, j))?)?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, p: u32) -> Result<IntegerMatrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("power of a non-square matrix".into()));
        }
        let mut out = Self::identity(self.rows);
        for _ in 0..p {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Result<IntegerMatrix> {
        let data = self.data.iter().map(|v| v.checked_neg().ok_or(Error::Overflow)).collect::<Result<_>>()?;
        Ok(IntegerMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn trace(&self) -> Result<i64> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("trace of a non-square matrix".into()));
        }
        (0..self.rows).try_fold(0i64, |acc, i| add(acc, self.get(i, i)))
    }

    /// Block `rows r0..r1`, `cols c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> IntegerMatrix {
        let mut m = Self::zeros(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                m.set(i - r0, j - c0, self.get(i, j));
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += c * row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, c: i64) -> Result<()> {
        for j in 0..self.cols {
            let v = add(self.get(dst, j), mul(c, self.get(src, j))?)?;
            self.set(dst, j, v);
        }
        Ok(())
    }

    /// `col[dst] += c * col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, c: i64) -> Result<()> {
        for i in 0..self.rows {
            let v = add(self.get(i, dst), mul(c, self.get(i, src))?)?;
            self.set(i, dst, v);
        }
        Ok(())
    }

    /// Finds a unimodular `R` such that the column span of `self` becomes the
    /// span of the first `rank` standard basis vectors after the change of
    /// coordinates `x -> R x`. Fails with [`Error::Torsion`] when the span is
    /// not a direct summand.
    pub fn split_column_span(&self) -> Result<SpanSplit> {
        let n = self.rows;
        let mut a = self.clone();
        let mut r = Self::identity(n);
        let mut r_inv = Self::identity(n);
        let mut t = 0;
        while t < n.min(a.cols) {
            let Some((pi, pj)) = min_abs_entry(&a, t) else { break };
            if pi != t {
                a.swap_rows(t, pi);
                r.swap_rows(t, pi);
                r_inv.swap_cols(t, pi);
            }
            if pj != t {
                a.swap_cols(t, pj);
            }
            loop {
                let p = a.get(t, t);
                let mut done = true;
                for i in t + 1..n {
                    let q = a.get(i, t) / p;
                    if q != 0 {
                        a.add_row(i, t, -q)?;
                        r.add_row(i, t, -q)?;
                        r_inv.add_col(t, i, q)?;
                    }
                    if a.get(i, t) != 0 {
                        done = false;
                    }
                }
                for j in t + 1..a.cols {
                    let q = a.get(t, j) / p;
                    if q != 0 {
                        a.add_col(j, t, -q)?;
                    }
                    if a.get(t, j) != 0 {
                        done = false;
                    }
                }
                if done {
                    break;
                }
                let (pi, pj) = min_abs_entry_cross(&a, t);
                if pi != t {
                    a.swap_rows(t, pi);
                    r.swap_rows(t, pi);
                    r_inv.swap_cols(t, pi);
                }
                if pj != t {
                    a.swap_cols(t, pj);
                }
            }
            if a.get(t, t).abs() != 1 {
                return Err(Error::Torsion);
            }
            t += 1;
        }
        Ok(SpanSplit { r, r_inv, rank: t })
    }
}

/// Smallest nonzero entry in the block `rows t.., cols t..`.
fn min_abs_entry(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(i64, usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let v = a.get(i, j).abs();
            if v != 0 && best.is_none_or(|(b, _, _)| v < b) {
                best = Some((v, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Smallest nonzero entry in row `t` or column `t` (beyond the diagonal block start).
fn min_abs_entry_cross(a: &IntegerMatrix, t: usize) -> (usize, usize) {
    let mut best = (a.get(t, t).abs(), t, t);
    for i in t + 1..a.rows {
        let v = a.get(i, t).abs();
        if v != 0 && v < best.0 {
            best = (v, i, t);
        }
    }
    for j in t + 1..a.cols {
        let v = a.get(t, j).abs();
        if v != 0 && v < best.0 {
            best = (v, t, j);
        }
    }
    (best.1, best.2)
}

/// Result of [`IntegerMatrix::split_column_span`].
#[derive(Clone, Debug)]
pub struct SpanSplit {
    pub r: IntegerMatrix,
    pub r_inv: IntegerMatrix,
    pub rank: usize,
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|v| alloc::format!("{v}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_ops() {
        let a = IntegerMatrix::from_rows(&[&[1, 2], &[3, 4]]).unwrap();
        let b = IntegerMatrix::from_rows(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(a.mul(&b).unwrap(), IntegerMatrix::from_rows(&[&[2, 1], &[4, 3]]).unwrap());
        assert_eq!(a.trace().unwrap(), 5);
        assert!(b.pow(2).unwrap().is_identity());
        assert_eq!(alloc::format!("{a}"), "1 2\n3 4\n");
        assert!(a.mul(&IntegerMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let a = IntegerMatrix::from_rows(&[&[i64::MAX, 0], &[0, 1]]).unwrap();
        assert_eq!(a.mul(&IntegerMatrix::from_rows(&[&[2, 0], &[0, 1]]).unwrap()), Err(Error::Overflow));
    }

    #[test]
    fn split_detects_torsion() {
        let a = IntegerMatrix::from_columns(2, &[alloc::vec![2, 0]]).unwrap();
        assert_eq!(a.split_column_span().unwrap_err(), Error::Torsion);
        let b = IntegerMatrix::from_columns(3, &[alloc::vec![1, 1, 0], alloc::vec![2, 2, 0]]).unwrap();
        assert_eq!(b.split_column_span().unwrap().rank, 1);
    }

    proptest! {
        #[test]
        fn split_is_unimodular_and_correct(cols in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 0..4)) {
            let a = IntegerMatrix::from_columns(4, &cols).unwrap();
            match a.split_column_span() {
                Ok(s) => {
                    prop_assert!(s.r.mul(&s.r_inv).unwrap().is_identity());
                    let ra = s.r.mul(&a).unwrap();
                    prop_assert!(ra.submatrix(s.rank, 4, 0, a.cols()).is_zero());
                    let top = ra.submatrix(0, s.rank, 0, a.cols());
                    prop_assert_eq!(minor_gcd(&top), 1);
                }
                Err(Error::Torsion) => {}
                Err(e) => prop_assert!(false, "unexpected {e:?}"),
            }
        }
    }

    fn det(m: &IntegerMatrix) -> i64 {
        let n = m.rows();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let rest: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let mut minor = IntegerMatrix::zeros(n - 1, n - 1);
                for i in 1..n {
                    for (c, &src) in rest.iter().enumerate() {
                        minor.set(i - 1, c, m.get(i, src));
                    }
                }
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m.get(0, j) * det(&minor)
            })
            .sum()
    }

    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 { a.abs() } else { gcd(b, a % b) }
    }

    /// gcd of all maximal minors; 1 iff the columns span the full lattice.
    fn minor_gcd(m: &IntegerMatrix) -> i64 {
        let (r, c) = (m.rows(), m.cols());
        let mut g = 0;
        for mask in 0u32..(1 << c) {
            if mask.count_ones() as usize != r {
                continue;
            }
            let chosen: Vec<usize> = (0..c).filter(|j| mask >> j & 1 == 1).collect();
            let mut sq = IntegerMatrix::zeros(r, r);
            for i in 0..r {
                for (k, &j) in chosen.iter().enumerate() {
                    sq.set(i, k, m.get(i, j));
                }
            }
            g = gcd(g, det(&sq));
        }
        g
    }
}
