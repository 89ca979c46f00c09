//! Small dense matrices over exact or floating scalars.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
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

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix<T>) -> Matrix<T> {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Matrix<T>) -> Matrix<T> {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, c: &T) -> Matrix<T> {
        self.map(|a| a.clone() * c.clone())
    }

    /// `self − c·I`.
    pub fn shift_diagonal(&self, c: &T) -> Matrix<T> {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let idx = i * self.cols + i;
            out.data[idx] = out.data[idx].clone() - c.clone();
        }
        out
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn row_sums(&self) -> Vec<T> {
        (0..self.rows)
            .map(|i| self.row(i).iter().cloned().fold(T::zero(), |a, b| a + b))
            .collect()
    }

    pub fn col_sums(&self) -> Vec<T> {
        (0..self.cols)
            .map(|j| (0..self.rows).fold(T::zero(), |a, i| a + self.get(i, j).clone()))
            .collect()
    }

    fn zip(&self, other: &Matrix<T>, f: impl Fn(&T, &T) -> T) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl<T> Neg for Matrix<T>
where
    T: Neg<Output = T>,
{
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.into_iter().map(|x| -x).collect(),
        }
    }
}

impl Matrix<BigRational> {
    /// Exact rank by Gaussian elimination over ℚ.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..a.cols {
            let Some(pivot) = (rank..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            for j in 0..a.cols {
                a.data.swap(rank * a.cols + j, pivot * a.cols + j);
            }
            let inv = a.get(rank, col).recip();
            for r in rank + 1..a.rows {
                let f = a.get(r, col) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in col..a.cols {
                    let v = a.get(r, j) - &f * a.get(rank, j);
                    a.set(r, j, v);
                }
            }
            rank += 1;
            if rank == a.rows {
                break;
            }
        }
        rank
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).to_f64().expect("finite rational")
        })
    }
}

impl Matrix<f64> {
    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn products_and_trace() {
        let a = Matrix::from_fn(2, 2, |i, j| q((i * 2 + j) as i64 + 1, 1));
        let id = Matrix::<BigRational>::identity(2);
        assert_eq!(a.mul(&id), a);
        let sq = a.mul(&a);
        assert_eq!(*sq.get(0, 0), q(7, 1));
        assert_eq!(*sq.get(1, 1), q(22, 1));
        assert_eq!(a.trace(), q(5, 1));
        assert_eq!(a.row_sums(), vec![q(3, 1), q(7, 1)]);
        assert_eq!(a.col_sums(), vec![q(4, 1), q(6, 1)]);
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.transpose().get(0, 1), a.get(1, 0));
    }

    #[test]
    fn exact_rank() {
        let a = Matrix::from_fn(3, 3, |i, j| q((i + j) as i64, 1));
        assert_eq!(a.rank(), 2);
        assert_eq!(Matrix::<BigRational>::identity(4).rank(), 4);
        assert_eq!(Matrix::<BigRational>::zeros(3, 2).rank(), 0);
        let b = Matrix::from_fn(2, 3, |i, j| q(1, (i + j + 1) as i64));
        assert_eq!(b.rank(), 2);
    }

    #[test]
    fn float_conversion() {
        let a = Matrix::from_fn(2, 2, |i, j| q(i as i64 + 1, j as i64 + 2));
        let d = a.to_f64();
        assert!((d[(1, 1)] - 2.0 / 3.0).abs() < 1e-15);
    }
}
