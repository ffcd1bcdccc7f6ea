//! Small dense matrices over exact scalars.

use std::fmt;

use crate::scalar::{Field, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from row vectors. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * rhs[(k, j)].clone();
                }
            }
        }
        out
    }

    /// Appends the given columns on the right.
    pub fn extend_columns(&self, extra: &[Vec<T>]) -> Self {
        let rows = (0..self.rows)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend(extra.iter().map(|c| c[i].clone()));
                row
            })
            .collect();
        Self::from_rows(rows)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Field> Matrix<T> {
    /// Gauss-Jordan inverse; `None` if the matrix is singular or not square.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = a[(col, j)].clone() / p.clone();
                inv[(col, j)] = inv[(col, j)].clone() / p.clone();
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for j in 0..n {
                    a[(r, j)] = a[(r, j)].clone() - factor.clone() * a[(col, j)].clone();
                    inv[(r, j)] = inv[(r, j)].clone() - factor.clone() * inv[(col, j)].clone();
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
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

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    fn r(v: i64) -> Ratio<i64> {
        Ratio::from_integer(v)
    }

    #[test]
    fn inverse_of_small_matrix() {
        let m = Matrix::from_rows(vec![vec![r(2), r(1)], vec![r(1), r(1)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, Matrix::from_rows(vec![vec![r(1), r(-1)], vec![r(-1), r(2)]]));
        assert_eq!(m.mul(&inv), Matrix::identity(2));
    }

    #[test]
    fn singular_and_rectangular_have_no_inverse() {
        let m = Matrix::from_rows(vec![vec![r(1), r(2)], vec![r(2), r(4)]]);
        assert!(m.inverse().is_none());
        let m = Matrix::from_rows(vec![vec![r(1), r(2)]]);
        assert!(m.inverse().is_none());
    }

    #[test]
    fn pivoting_needed() {
        let m = Matrix::from_rows(vec![vec![r(0), r(1)], vec![r(1), r(0)]]);
        assert_eq!(m.inverse().unwrap(), m);
    }

    #[test]
    fn extend_and_mul_vec() {
        let m = Matrix::from_rows(vec![vec![1_i64], vec![-1]]);
        let e = m.extend_columns(&[vec![0, 1]]);
        assert_eq!(e.mul_vec(&[3, 4]), vec![3, 1]);
        assert_eq!(e.column(1), vec![0, 1]);
    }
}
