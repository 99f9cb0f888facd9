//! Dense matrices of [`Scalar`]s over a single field.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    ctx: FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(ctx: FieldCtx, rows: usize, cols: usize) -> Matrix {
        Matrix {
            ctx,
            rows,
            cols,
            data: alloc::vec![Scalar::zero(ctx); rows * cols],
        }
    }

    pub fn identity(ctx: FieldCtx, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(ctx));
        }
        m
    }

    /// Builds a matrix from rows; every entry must live in `ctx` and rows must share a length.
    pub fn from_rows(ctx: FieldCtx, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            for x in row {
                if x.ctx() != ctx {
                    return Err(Error::MixedField {
                        left: ctx.to_string(),
                        right: x.ctx().to_string(),
                    });
                }
                data.push(x);
            }
        }
        Ok(Matrix {
            ctx,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Like [`Matrix::from_rows`], taking the field from the first entry.
    pub fn from_scalar_rows(rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let ctx =
            rows.iter()
                .flatten()
                .next()
                .map(Scalar::ctx)
                .ok_or(Error::DimensionMismatch {
                    expected: 1,
                    found: 0,
                })?;
        Matrix::from_rows(ctx, rows)
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    /// Panics if `x` is not in the matrix's field.
    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        assert_eq!(x.ctx(), self.ctx, "entry from a different field");
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ctx, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        if self.ctx != other.ctx {
            return Err(Error::MixedField {
                left: self.ctx.to_string(),
                right: other.ctx.to_string(),
            });
        }
        let mut out = Matrix::zeros(self.ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Exact determinant.
    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        match self.ctx {
            FieldCtx::Rational => Ok(Scalar::Rational(self.rational_det())),
            _ => self.gaussian_det(),
        }
    }

    /// Clears denominators row by row, then runs fraction-free Bareiss elimination on the
    /// integer matrix. Every division in the recurrence is exact.
    fn rational_det(&self) -> BigRational {
        let n = self.rows;
        if n == 0 {
            return BigRational::one();
        }
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let lcm = self.row(i).iter().fold(BigInt::one(), |acc, x| match x {
                    Scalar::Rational(q) => acc.lcm(q.denom()),
                    _ => unreachable!(),
                });
                let row = self
                    .row(i)
                    .iter()
                    .map(|x| match x {
                        Scalar::Rational(q) => q.numer() * (&lcm / q.denom()),
                        _ => unreachable!(),
                    })
                    .collect();
                scale *= &lcm;
                row
            })
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigRational::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        BigRational::new(sign * &a[n - 1][n - 1], scale)
    }

    fn gaussian_det(&self) -> Result<Scalar> {
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = Scalar::one(self.ctx);
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(Scalar::zero(self.ctx));
            };
            if p != k {
                a.swap(p, k);
                det = det.neg();
            }
            det = det.checked_mul(&a[k][k])?;
            let pivot_inv = a[k][k].inv()?;
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let factor = a[i][k].checked_mul(&pivot_inv)?;
                for j in k..n {
                    let v = a[i][j].checked_sub(&factor.checked_mul(&a[k][j])?)?;
                    a[i][j] = v;
                }
            }
        }
        Ok(det)
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.to_rows();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let inv = a[rank][col].inv().expect("nonzero pivot");
            for i in rank + 1..self.rows {
                if a[i][col].is_zero() {
                    continue;
                }
                let factor = &a[i][col] * &inv;
                for j in col..self.cols {
                    a[i][j] = &a[i][j] - &(&factor * &a[rank][j]);
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Determinant of a square matrix given as rows of scalars sharing one field.
pub fn det(rows: &[Vec<Scalar>]) -> Result<Scalar> {
    Matrix::from_scalar_rows(rows.to_vec())?.determinant()
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<alloc::string::String> = self.data.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(|c| c.len()).max().unwrap_or(1);
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j], width = width)?;
            }
            f.write_str("]")?;
            if i + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ints(ctx: FieldCtx, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            ctx,
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_int(ctx, v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn path_determinants() {
        for ctx in [
            FieldCtx::Rational,
            FieldCtx::Cyclotomic,
            FieldCtx::prime(7).unwrap(),
        ] {
            let p3 = ints(ctx, &[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]]);
            assert!(p3.determinant().unwrap().is_zero());
            let p4 = ints(
                ctx,
                &[&[0, 1, 0, 0], &[1, 0, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, 0]],
            );
            assert!(!p4.determinant().unwrap().is_zero());
            assert!(Matrix::identity(ctx, 3).determinant().unwrap().is_one());
        }
    }

    #[test]
    fn rational_bareiss_with_fractions() {
        let q = |n: i64, d: i64| Scalar::Rational(BigRational::new(n.into(), d.into()));
        // det [[1/2, 1/3], [1/4, 1/5]] = 1/10 - 1/12 = 1/60
        let m = Matrix::from_rows(
            FieldCtx::Rational,
            vec![vec![q(1, 2), q(1, 3)], vec![q(1, 4), q(1, 5)]],
        )
        .unwrap();
        assert_eq!(m.determinant().unwrap(), q(1, 60));
        // needs a row swap
        let m = ints(FieldCtx::Rational, &[&[0, 2, 1], &[1, 0, 0], &[3, 1, 4]]);
        assert_eq!(
            m.determinant().unwrap(),
            Scalar::from_int(FieldCtx::Rational, -7)
        );
    }

    #[test]
    fn cyclotomic_determinant() {
        let c = FieldCtx::Cyclotomic;
        let w = Scalar::omega();
        let w2 = w.square();
        let m = Matrix::from_rows(
            c,
            vec![vec![w.clone(), Scalar::zero(c)], vec![Scalar::one(c), w2]],
        )
        .unwrap();
        assert!(m.determinant().unwrap().is_one());
    }

    #[test]
    fn non_square_and_mixed() {
        let m = Matrix::zeros(FieldCtx::Rational, 2, 3);
        assert!(matches!(
            m.determinant(),
            Err(Error::DimensionMismatch { .. })
        ));
        let rows = vec![vec![
            Scalar::one(FieldCtx::Rational),
            Scalar::one(FieldCtx::Cyclotomic),
        ]];
        assert!(matches!(det(&rows), Err(Error::MixedField { .. })));
    }

    #[test]
    fn rank_counts() {
        let ctx = FieldCtx::Rational;
        assert_eq!(ints(ctx, &[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]]).rank(), 2);
        assert_eq!(Matrix::identity(ctx, 4).rank(), 4);
        assert_eq!(Matrix::zeros(ctx, 2, 2).rank(), 0);
    }
}
