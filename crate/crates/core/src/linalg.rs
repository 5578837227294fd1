//! Dense exact linear algebra over Q(q) and over Q.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::scalar::{Rational, Scalar};

pub trait Field: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero; callers only invert pivots.
    fn inv(&self) -> Self;
    /// Size estimate used to prefer cheap pivots.
    fn weight(&self) -> usize {
        0
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        Scalar::inv(self).expect("inverting a zero pivot")
    }
    fn weight(&self) -> usize {
        self.numerator().num_terms() + self.denominator().num_terms()
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn weight(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let n = rows.len();
        let data: Vec<F> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), n * cols, "ragged rows");
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.data[idx] = out.data[idx].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = F::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(s)).collect(),
        }
    }

    pub fn try_map<G: Field, E>(&self, mut f: impl FnMut(&F) -> std::result::Result<G, E>) -> std::result::Result<Matrix<G>, E> {
        let data = self.data.iter().map(&mut f).collect::<std::result::Result<Vec<G>, E>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Reduced row echelon form; returns the pivot column of each nonzero
    /// row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let best = (row..m.rows)
                .filter(|&r| !m.get(r, col).is_zero())
                .min_by_key(|&r| m.get(r, col).weight());
            let Some(p) = best else { continue };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv();
            for c in col..m.cols {
                let v = m.get(row, c).mul(&inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let pv = m.get(row, c);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = m.get(r, c).sub(&factor.mul(pv));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column, with a 1
    /// in that column.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = r.get(i, free).neg();
            }
            out.push(v);
        }
        out
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                F::one()
            } else {
                F::zero()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |r, c| red.get(r, c + n).clone()))
    }

    /// Some solution of `self * x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug = Self::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                b[r].clone()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red.get(i, self.cols).clone();
        }
        Some(x)
    }
}

impl Matrix<Scalar> {
    pub fn evaluate_at(&self, q0: &Rational) -> Result<Matrix<Rational>> {
        self.try_map(|s| s.evaluate_at(q0))
    }
}

/// Row-sparse matrix over Q(q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, Scalar>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![BTreeMap::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_dense(d: &Matrix<Scalar>) -> Self {
        let mut m = Self::zeros(d.rows(), d.cols());
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                m.set(r, c, d.get(r, c).clone());
            }
        }
        m
    }

    pub fn to_dense(&self) -> Matrix<Scalar> {
        Matrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r].get(&c).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        let e = self.data[r].entry(c).or_default();
        *e += v;
        if e.is_zero() {
            self.data[r].remove(&c);
        }
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, &Scalar)> {
        self.data[r].iter().map(|(c, v)| (*c, v))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    /// Nonzero entries `(row, col, value)` of one column.
    pub fn column_entries(&self, c: usize) -> Vec<(usize, usize, Scalar)> {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| row.get(&c).map(|v| (r, c, v.clone())))
            .collect()
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn mul(&self, o: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (k, a) in row {
                for (c, b) in &o.data[*k] {
                    out.add_at(r, *c, &(a * b));
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, o: &SparseMatrix, s: &Scalar) {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        if s.is_zero() {
            return;
        }
        for (r, c, v) in o.entries() {
            self.add_at(r, c, &(v * s));
        }
    }

    pub fn add(&self, o: &SparseMatrix) -> SparseMatrix {
        let mut out = self.clone();
        out.add_scaled(o, &Scalar::one());
        out
    }

    pub fn sub(&self, o: &SparseMatrix) -> SparseMatrix {
        let mut out = self.clone();
        out.add_scaled(o, &-Scalar::one());
        out
    }

    pub fn scale(&self, s: &Scalar) -> SparseMatrix {
        let mut out = Self::zeros(self.rows, self.cols);
        out.add_scaled(self, s);
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for (r, c, v) in self.entries() {
            out.set(c, r, v.clone());
        }
        out
    }

    /// Kronecker product; row `(i, k)` maps to `i * o.rows + k`.
    pub fn kron(&self, o: &SparseMatrix) -> SparseMatrix {
        let mut out = Self::zeros(self.rows * o.rows, self.cols * o.cols);
        for (i, j, a) in self.entries() {
            for (k, l, b) in o.entries() {
                out.set(i * o.rows + k, j * o.cols + l, a * b);
            }
        }
        out
    }

    /// First nonzero entry, row-major.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &Scalar)> {
        self.entries().next()
    }
}

impl<F: Field + fmt::Display> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use proptest::prelude::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn symbolic_inverse() {
        let m = Matrix::from_rows(vec![vec![s("q"), s("1")], vec![s("0"), s("q^-1")]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert_eq!(*inv.get(0, 1), s("-1"));
    }

    #[test]
    fn rank_drops_at_special_point() {
        // det = q^2 - 1 vanishes at q = 1 only.
        let m = Matrix::from_rows(vec![vec![s("q"), s("1")], vec![s("1"), s("q")]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.evaluate_at(&int(1)).unwrap().rank(), 1);
        assert_eq!(m.evaluate_at(&int(2)).unwrap().rank(), 2);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = Matrix::from_rows(vec![vec![s("1"), s("q"), s("q^2")], vec![s("q"), s("q^2"), s("q^3")]]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inconsistent_system_has_no_solution() {
        let m = Matrix::from_rows(vec![vec![rat(1, 1), rat(1, 1)], vec![rat(2, 1), rat(2, 1)]]);
        assert!(m.solve(&[rat(1, 1), rat(3, 1)]).is_none());
        let x = m.solve(&[rat(1, 1), rat(2, 1)]).unwrap();
        assert_eq!(m.apply(&x), vec![rat(1, 1), rat(2, 1)]);
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in prop::collection::vec(-3i64..4, 12)) {
            let m = Matrix::from_fn(3, 4, |r, c| int(entries[r * 4 + c]));
            prop_assert_eq!(m.rank() + m.kernel().len(), 4);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }
    }
}
