//! Exact dense linear algebra over any field.
//!
//! One generic implementation of row reduction serves three scalar types:
//! rationals, Gaussian rationals, and rational functions.  Working over the
//! rational-function field is what lets rank and span questions be answered
//! on a dense open set instead of at sampled points.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{One, Zero};

use crate::error::{Error, Result};

/// The scalar interface needed by exact Gaussian elimination.
pub trait Field:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Field for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
{
}

/// A dense matrix in row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Outcome of solving a linear system `A x = b`.
pub enum LinearSolution<T> {
    /// `particular + span(kernel)` describes every solution.
    Solution { particular: Vec<T>, kernel: Vec<Vec<T>> },
    Infeasible,
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn matmul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * rhs[(k, j)].clone();
            }
            acc
        })
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "vector length must match columns");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self[(i, k)].clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, c: &T) -> Matrix<T> {
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() * c.clone())
    }

    pub fn add(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() + rhs[(i, j)].clone())
    }

    pub fn sub(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() - rhs[(i, j)].clone())
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Reduced row echelon form; returns the pivot column of each pivot row.
    pub fn rref(&self) -> (Matrix<T>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // Find a pivot in column c at or below row r.
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = T::one() / m[(r, c)].clone();
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let v = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                        m[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : A x = 0}`.
    ///
    /// One vector per free column, built by setting that free variable to 1
    /// and reading the pivot variables off the reduced echelon form; vectors
    /// are returned in ascending free-column order.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut x = vec![T::zero(); self.cols];
            x[free] = T::one();
            for (row, &col) in pivots.iter().enumerate() {
                x[col] = T::zero() - r[(row, free)].clone();
            }
            basis.push(x);
        }
        basis
    }

    /// Solve `A x = b` exactly, reporting the full affine solution set.
    pub fn solve(&self, b: &[T]) -> LinearSolution<T> {
        assert_eq!(self.rows, b.len(), "right-hand side length must match rows");
        let mut aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        aug = r;
        if pivots.last() == Some(&self.cols) {
            return LinearSolution::Infeasible;
        }
        let mut particular = vec![T::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            particular[col] = aug[(row, self.cols)].clone();
        }
        let kernel = self.kernel_basis();
        LinearSolution::Solution { particular, kernel }
    }

    /// Exact determinant by fraction-carrying Gaussian elimination.
    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant requires a square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = T::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return T::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = T::zero() - det;
            }
            let pivot = m[(c, c)].clone();
            det = det * pivot.clone();
            let inv = T::one() / pivot;
            for i in (c + 1)..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone() * inv.clone();
                for j in c..n {
                    let v = m[(i, j)].clone() - f.clone() * m[(c, j)].clone();
                    m[(i, j)] = v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix<T>> {
        assert_eq!(self.rows, self.cols, "inverse requires a square matrix");
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                T::one()
            } else {
                T::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|j| self.data[i * self.cols + j].to_string()).collect();
            writeln!(f, "[ {} ]", row.join("  "))?;
        }
        Ok(())
    }
}

/// Reduced-echelon basis of the row space of `vectors`.
pub fn rowspace_basis<T: Field>(vectors: &[Vec<T>], dim: usize) -> Vec<Vec<T>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors.to_vec()).expect("rows of equal length");
    assert_eq!(m.ncols(), dim);
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Is `v` in the span of `basis`?
pub fn in_span<T: Field>(basis: &[Vec<T>], v: &[T]) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let mut rows = basis.to_vec();
    let rank_before = Matrix::from_rows(rows.clone()).expect("equal lengths").rank();
    rows.push(v.to_vec());
    let rank_after = Matrix::from_rows(rows).expect("equal lengths").rank();
    rank_before == rank_after
}

/// Basis of the intersection of two spans inside the same ambient space.
pub fn intersect_spans<T: Field>(a: &[Vec<T>], b: &[Vec<T>], dim: usize) -> Vec<Vec<T>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Solve sum s_i a_i = sum t_j b_j: kernel of [A^T | -B^T].
    let cols = a.len() + b.len();
    let m = Matrix::from_fn(dim, cols, |i, j| {
        if j < a.len() {
            a[j][i].clone()
        } else {
            T::zero() - b[j - a.len()][i].clone()
        }
    });
    let mut vecs = Vec::new();
    for k in m.kernel_basis() {
        let mut v = vec![T::zero(); dim];
        for (j, s) in k.iter().take(a.len()).enumerate() {
            for i in 0..dim {
                v[i] = v[i].clone() + s.clone() * a[j][i].clone();
            }
        }
        if !v.iter().all(|x| x.is_zero()) {
            vecs.push(v);
        }
    }
    rowspace_basis(&vecs, dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Poly, VarSet};
    use crate::rat::{rat, ratq, Rat};
    use crate::ratfunc::RatFunc;

    fn m(rows: Vec<Vec<i64>>) -> Matrix<Rat> {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(rat).collect()).collect())
            .unwrap()
    }

    #[test]
    fn rref_produces_identity_leading_block() {
        let a = m(vec![vec![2, 1], vec![1, 1]]);
        let (r, pivots) = a.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r, Matrix::identity(2));
    }

    #[test]
    fn rank_and_kernel_agree_on_dimension_count() {
        let a = m(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 1, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 1);
        // A * k = 0 exactly
        for v in &k {
            assert!(a.matvec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_reports_particular_plus_kernel_or_infeasibility() {
        let a = m(vec![vec![1, 1], vec![2, 2]]);
        match a.solve(&[rat(3), rat(6)]) {
            LinearSolution::Solution { particular, kernel } => {
                assert_eq!(a.matvec(&particular), vec![rat(3), rat(6)]);
                assert_eq!(kernel.len(), 1);
            }
            LinearSolution::Infeasible => panic!("system is feasible"),
        }
        assert!(matches!(a.solve(&[rat(3), rat(7)]), LinearSolution::Infeasible));
    }

    #[test]
    fn determinant_and_inverse_are_exact() {
        let a = m(vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(a.det(), rat(-2));
        let inv = a.inverse().unwrap();
        assert_eq!(inv[(0, 0)], rat(-2));
        assert_eq!(inv[(0, 1)], rat(1));
        assert_eq!(inv[(1, 0)], ratq(3, 2));
        assert_eq!(inv[(1, 1)], ratq(-1, 2));
        assert_eq!(a.matmul(&inv), Matrix::identity(2));
        assert!(m(vec![vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn rank_over_the_function_field_sees_generic_rank() {
        // [[x, x^2], [1, x]] has rank 1 over Q(x): row 1 = x * row 2.
        let vs = VarSet::new(&["x"]).unwrap();
        let x = RatFunc::var(&vs, 0);
        let one = RatFunc::from_poly(Poly::constant_on(&vs, rat(1)));
        let a = Matrix::from_rows(vec![
            vec![x.clone(), &x * &x],
            vec![one, x.clone()],
        ])
        .unwrap();
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn span_membership_and_intersection_are_exact() {
        let e1 = vec![rat(1), rat(0), rat(0)];
        let e2 = vec![rat(0), rat(1), rat(0)];
        let v = vec![rat(2), rat(-3), rat(0)];
        let w = vec![rat(0), rat(0), rat(1)];
        assert!(in_span(&[e1.clone(), e2.clone()], &v));
        assert!(!in_span(&[e1.clone(), e2.clone()], &w));
        // span{e1, e2} meet span{e2, e3} = span{e2}
        let inter = intersect_spans(&[e1, e2.clone()], &[e2.clone(), w], 3);
        assert_eq!(inter, vec![e2]);
    }
}
