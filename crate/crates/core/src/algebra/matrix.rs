//! Dense matrices and exact determinants.

use std::fmt;
use std::sync::Arc;

use super::field::{NfElem, NumberField};
use super::laurent::LaurentPoly;
use super::rational::{rat, Rational};
use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn require_square(&self) -> Result<()> {
        if self.rows == self.cols {
            Ok(())
        } else {
            Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

impl Matrix<LaurentPoly> {
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let field = self.entries[0].field().clone();
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(LaurentPoly::zero(&field), |acc, k| {
                &acc + &(self.get(i, k) * other.get(k, j))
            })
        }))
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.entries[i * self.cols..(i + 1) * self.cols]
                .iter()
                .map(ToString::to_string)
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Determinant over a number field by fraction-free (Bareiss) elimination
/// with row pivoting.
pub fn det_nf(m: &Matrix<NfElem>) -> Result<NfElem> {
    m.require_square()?;
    let n = m.rows;
    let field = m.entries[0].field().clone();
    let mut a: Vec<Vec<NfElem>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut prev = NfElem::one(&field);
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(NfElem::zero(&field));
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j]
                    .try_mul(&a[k][k])?
                    .try_sub(&a[i][k].try_mul(&a[k][j])?)?;
                a[i][j] = num.try_div(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Exact determinant of a matrix of Laurent polynomials.
///
/// Each row is shifted to ordinary polynomials, the determinant is evaluated
/// at the nodes `0, 1, ..., D` (with `D` the sum of row degrees) and
/// recovered by Newton interpolation, then shifted back.
pub fn det_laurent(m: &Matrix<LaurentPoly>) -> Result<LaurentPoly> {
    m.require_square()?;
    let n = m.rows;
    let field = m.entries[0].field().clone();
    let mut total_shift = 0i64;
    let mut degree_bound = 0i64;
    let mut shifted = Vec::with_capacity(n * n);
    for i in 0..n {
        let row = m.row(i);
        let low = row.iter().filter_map(LaurentPoly::min_exp).min();
        let high = row.iter().filter_map(LaurentPoly::max_exp).max();
        let (Some(low), Some(high)) = (low, high) else {
            return Ok(LaurentPoly::zero(&field));
        };
        total_shift += low;
        degree_bound += high - low;
        shifted.extend(row.iter().map(|p| p.shift(-low)));
    }
    let shifted = Matrix::new(n, n, shifted)?;

    let nodes: Vec<Rational> = (0..=degree_bound).map(rat).collect();
    let values = nodes
        .iter()
        .map(|x| {
            let at = NfElem::from_rational(&field, x.clone());
            let scalar: Vec<NfElem> = shifted
                .entries
                .iter()
                .map(|p| p.eval(&at))
                .collect::<Result<_>>()?;
            det_nf(&Matrix::new(n, n, scalar)?)
        })
        .collect::<Result<Vec<_>>>()?;

    let coeffs = newton_interpolate(&field, &nodes, values);
    let mut out = LaurentPoly::zero(&field);
    for (k, c) in coeffs.into_iter().enumerate() {
        out = &out + &LaurentPoly::monomial(c, k as i64 + total_shift);
    }
    Ok(out)
}

/// Monomial coefficients of the interpolating polynomial through `(x_i, y_i)`.
fn newton_interpolate(
    field: &Arc<NumberField>,
    xs: &[Rational],
    mut ys: Vec<NfElem>,
) -> Vec<NfElem> {
    let n = xs.len();
    for level in 1..n {
        for i in (level..n).rev() {
            let gap = &xs[i] - &xs[i - level];
            let diff = &ys[i] - &ys[i - 1];
            ys[i] = diff.scale(&gap.recip());
        }
    }
    // Horner on the Newton form: p = y0 + (x - x0)(y1 + (x - x1)(...)).
    let mut poly: Vec<NfElem> = vec![NfElem::zero(field); n];
    for i in (0..n).rev() {
        // poly <- poly·(x - x_i) + ys[i]
        let mut next = vec![NfElem::zero(field); n];
        for k in 0..n {
            if poly[k].is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] = &next[k + 1] + &poly[k];
            }
            next[k] = &next[k] - &poly[k].scale(&xs[i]);
        }
        next[0] = &next[0] + &ys[i];
        poly = next;
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn q() -> Arc<NumberField> {
        NumberField::rationals()
    }

    fn lp(low: i64, cs: &[i64]) -> LaurentPoly {
        let cs: Vec<Rational> = cs.iter().map(|&c| rat(c)).collect();
        LaurentPoly::from_rationals(&q(), low, &cs)
    }

    #[test]
    fn one_by_one() {
        let p = lp(-3, &[2, 0, -1, 5]);
        let m = Matrix::new(1, 1, vec![p.clone()]).unwrap();
        assert_eq!(det_laurent(&m).unwrap(), p);
    }

    #[test]
    fn non_square_is_rejected() {
        let m = Matrix::new(1, 2, vec![lp(0, &[1]), lp(0, &[1])]).unwrap();
        assert_eq!(det_laurent(&m), Err(Error::NonSquare { rows: 1, cols: 2 }));
    }

    #[test]
    fn zero_row_gives_zero() {
        let z = LaurentPoly::zero(&q());
        let m = Matrix::new(2, 2, vec![lp(0, &[1, 1]), lp(2, &[3]), z.clone(), z]).unwrap();
        assert!(det_laurent(&m).unwrap().is_zero());
    }

    #[test]
    fn characteristic_polynomial_of_companion() {
        // Companion matrix of t^3 - 2t^2 + 5t - 7.
        let a = [[0, 0, 7], [1, 0, -5], [0, 1, 2]];
        let m = Matrix::from_fn(3, 3, |i, j| {
            let d = if i == j {
                lp(1, &[1])
            } else {
                LaurentPoly::zero(&q())
            };
            &d - &lp(0, &[a[i][j]])
        });
        assert_eq!(det_laurent(&m).unwrap(), lp(0, &[-7, 5, -2, 1]));
    }

    #[test]
    fn bareiss_needs_pivoting() {
        let k = q();
        let e = |n| NfElem::from_int(&k, n);
        let m = Matrix::new(
            3,
            3,
            vec![e(0), e(2), e(1), e(3), e(1), e(0), e(1), e(1), e(1)],
        )
        .unwrap();
        assert_eq!(det_nf(&m).unwrap(), e(-4));
    }
}
