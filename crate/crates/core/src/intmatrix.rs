//! Dense integer matrices, generic over the scalar ring.
//!
//! Everything here is exact: determinants use fraction-free (Bareiss)
//! elimination, every intermediate value is an integer minor, and each
//! multiplication and subtraction is checked so a fixed-width scalar reports
//! overflow instead of wrapping.

use std::fmt;

use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scalars usable in exact elimination.
pub trait ExactInt:
    Clone + PartialEq + Zero + One + Signed + CheckedMul + CheckedSub + CheckedDiv
{
}

impl<T> ExactInt for T where
    T: Clone + PartialEq + Zero + One + Signed + CheckedMul + CheckedSub + CheckedDiv
{
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> IntMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("rows of unequal length".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
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

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> IntMatrix<U> {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone> IntMatrix<T> {
    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }
}

impl<T: Clone + Zero> IntMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }
}

impl<T: ExactInt> IntMatrix<T> {
    /// Exact determinant by Bareiss fraction-free elimination with row
    /// pivoting. The empty matrix has determinant one.
    pub fn det_bareiss(&self) -> Result<T> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.to_rows();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(T::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let lhs = a[i][j]
                        .checked_mul(&a[k][k])
                        .ok_or(Error::Overflow("determinant"))?;
                    let rhs = a[i][k]
                        .checked_mul(&a[k][j])
                        .ok_or(Error::Overflow("determinant"))?;
                    let num = lhs
                        .checked_sub(&rhs)
                        .ok_or(Error::Overflow("determinant"))?;
                    a[i][j] = num
                        .checked_div(&prev)
                        .ok_or(Error::Overflow("determinant"))?;
                }
                a[i][k] = T::zero();
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }
}

impl<T: fmt::Display> fmt::Display for IntMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    // Cofactor expansion along the first row; independent of elimination.
    fn det_laplace(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        let mut total = 0;
        for j in 0..n {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let term = m[0][j] * det_laplace(&minor);
            total += if j % 2 == 0 { term } else { -term };
        }
        total
    }

    #[test]
    fn small_determinants() {
        let m = IntMatrix::from_rows(vec![vec![1i64, 1], vec![1, -1]]).unwrap();
        assert_eq!(m.det_bareiss().unwrap(), -2);
        let m = IntMatrix::from_rows(vec![vec![3i64]]).unwrap();
        assert_eq!(m.det_bareiss().unwrap(), 3);
        let m = IntMatrix::<i64>::zeros(0, 0);
        assert_eq!(m.det_bareiss().unwrap(), 1);
    }

    #[test]
    fn needs_pivot() {
        let m = IntMatrix::from_rows(vec![vec![0i64, 1], vec![1, 0]]).unwrap();
        assert_eq!(m.det_bareiss().unwrap(), -1);
        let m = IntMatrix::from_rows(vec![
            vec![0i64, 2, 1],
            vec![0, 1, 5],
            vec![3, 0, 0],
        ])
        .unwrap();
        assert_eq!(m.det_bareiss().unwrap(), 27);
    }

    #[test]
    fn singular() {
        let m = IntMatrix::from_rows(vec![vec![1i64, 0], vec![0, 0]]).unwrap();
        assert_eq!(m.det_bareiss().unwrap(), 0);
    }

    #[test]
    fn overflow_is_reported() {
        let big = i64::MAX / 2;
        let m = IntMatrix::from_rows(vec![vec![big, 1], vec![1, big]]).unwrap();
        assert_eq!(m.det_bareiss(), Err(Error::Overflow("determinant")));
        let wide = m.map(|&v| BigInt::from(v));
        let expected = BigInt::from(big) * BigInt::from(big) - 1;
        assert_eq!(wide.det_bareiss().unwrap(), expected);
    }

    #[test]
    fn non_square_rejected() {
        assert!(IntMatrix::<i64>::zeros(2, 3).det_bareiss().is_err());
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor_expansion(
            n in 1usize..=5,
            seed in proptest::collection::vec(-6i64..=6, 25),
        ) {
            let rows: Vec<Vec<i64>> = (0..n).map(|i| seed[i * n..(i + 1) * n].to_vec()).collect();
            let m = IntMatrix::from_rows(rows.clone()).unwrap();
            let expected = det_laplace(&rows);
            prop_assert_eq!(m.det_bareiss().unwrap(), expected);
            prop_assert_eq!(m.map(|&v| v as i128).det_bareiss().unwrap(), expected as i128);
            prop_assert_eq!(m.map(|&v| BigInt::from(v)).det_bareiss().unwrap(), BigInt::from(expected));
            prop_assert_eq!(m.transpose().det_bareiss().unwrap(), expected);
        }
    }
}
