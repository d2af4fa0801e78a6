//! Small dense matrices over an exact field.

use std::fmt;

use crate::error::{QesError, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<C> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl<C: Scalar> Matrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![C::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { C::one() } else { C::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Matrix<D> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|v| v.clone() * c.clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() + other.get(i, j).clone()
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() - other.get(i, j).clone()
        }))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(QesError::DimensionMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(C::zero(), |acc, k| {
                acc + self.get(i, k).clone() * other.get(k, j).clone()
            })
        }))
    }

    pub fn mul_vec(&self, v: &[C]) -> Result<Vec<C>> {
        if v.len() != self.cols {
            return Err(QesError::DimensionMismatch {
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(C::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// `AB − BA`
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        if self.rows != self.cols || self.shape() != other.shape() {
            return Err(QesError::DimensionMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        self.mul(other)?.sub(&other.mul(self)?)
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(QesError::DimensionMismatch {
                left: self.shape(),
                right: other.shape(),
            })
        }
    }

    /// Only the diagonal and the first subdiagonal may be nonzero.
    pub fn is_lower_bidiagonal(&self) -> bool {
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| i == j || i == j + 1 || self.get(i, j).is_zero())
        })
    }

    /// Fraction-free (Bareiss) elimination with first-nonzero pivoting.
    pub fn determinant(&self) -> Result<C> {
        if self.rows != self.cols {
            return Err(QesError::DimensionMismatch {
                left: self.shape(),
                right: (self.cols, self.rows),
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(C::one());
        }
        let mut a = self.clone();
        let mut prev = C::one();
        let mut negate = false;
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        negate = !negate;
                    }
                    None => return Ok(C::zero()),
                }
            }
            let pivot = a.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j).clone() * pivot.clone()
                        - a.get(i, k).clone() * a.get(k, j).clone())
                        / prev.clone();
                    a.set(i, j, v);
                }
                a.set(i, k, C::zero());
            }
            prev = pivot;
        }
        let det = a.get(n - 1, n - 1).clone();
        Ok(if negate { -det } else { det })
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        for j in 0..self.cols {
            self.data.swap(r1 * self.cols + j, r2 * self.cols + j);
        }
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            a.swap_rows(row, p);
            let inv = C::one() / a.get(row, col).clone();
            for j in 0..self.cols {
                let v = a.get(row, j).clone() * inv.clone();
                a.set(row, j, v);
            }
            for r in 0..self.rows {
                if r == row || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..self.cols {
                    let v = a.get(r, j).clone() - factor.clone() * a.get(row, j).clone();
                    a.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    /// Basis of the null space, one vector per free column (in column order),
    /// each with its free coordinate set to one.
    pub fn null_space(&self) -> Vec<Vec<C>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![C::zero(); self.cols];
                v[f] = C::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    /// First null-space basis vector, scaled so its first nonzero entry is one.
    pub fn null_vector(&self) -> Option<Vec<C>> {
        let v = self.null_space().into_iter().next()?;
        let lead = v.iter().find(|c| !c.is_zero())?.clone();
        Some(v.into_iter().map(|c| c / lead.clone()).collect())
    }
}

impl<C: Scalar> fmt::Display for Matrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<C: Scalar> fmt::Debug for Matrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{sym, Symbol};
    use crate::scalar::{int, Rational};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    /// Cofactor expansion, the independent check for Bareiss.
    fn cofactor_det(a: &Matrix<Rational>) -> Rational {
        let n = a.rows();
        if n == 1 {
            return a.get(0, 0).clone();
        }
        let mut acc = int(0);
        for j in 0..n {
            let minor = Matrix::from_fn(n - 1, n - 1, |r, c| {
                a.get(r + 1, if c < j { c } else { c + 1 }).clone()
            });
            let term = a.get(0, j) * cofactor_det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn identity_determinant_is_one() {
        assert_eq!(Matrix::<Rational>::identity(4).determinant().unwrap(), int(1));
    }

    #[test]
    fn symbolic_two_by_two() {
        use Symbol::*;
        let a = Matrix::from_rows(vec![
            vec![sym(Alpha5), crate::expr::rat(0, 1)],
            vec![sym(Alpha3) - sym(Alpha2), sym(Alpha1) + sym(Alpha3) + sym(Alpha5)],
        ]);
        let det = a.determinant().unwrap();
        assert_eq!(det, sym(Alpha5) * (sym(Alpha1) + sym(Alpha3) + sym(Alpha5)));
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let a = m(&[&[0, 1, 2], &[3, 4, 5], &[6, 7, 9]]);
        assert_eq!(a.determinant().unwrap(), cofactor_det(&a));
    }

    #[test]
    fn commutator_dimension_checks() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert!(matches!(a.commutator(&b), Err(QesError::DimensionMismatch { .. })));
        assert!(Matrix::identity(2).commutator(&a).unwrap().is_zero());
    }

    #[test]
    fn null_vector_normalized_to_first_nonzero() {
        let a = m(&[&[0, 0, 0], &[0, -1, 0], &[0, 1, 0]]);
        let basis = a.null_space();
        assert_eq!(basis.len(), 2);
        assert_eq!(a.null_vector().unwrap(), vec![int(1), int(0), int(0)]);
        let b = m(&[&[2, 0], &[1, 0]]);
        assert_eq!(b.null_vector().unwrap(), vec![int(0), int(1)]);
        assert!(m(&[&[1, 0], &[0, 1]]).null_vector().is_none());
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor(n in 1usize..5, entries in prop::collection::vec(-5i64..6, 16)) {
            let a = Matrix::from_fn(n, n, |i, j| int(entries[i * 4 + j]));
            prop_assert_eq!(a.determinant().unwrap(), cofactor_det(&a));
        }

        #[test]
        fn null_space_vectors_are_annihilated(entries in prop::collection::vec(-3i64..4, 12)) {
            let a = Matrix::from_fn(3, 4, |i, j| int(entries[i * 4 + j]));
            for v in a.null_space() {
                prop_assert!(a.mul_vec(&v).unwrap().iter().all(|c| c == &int(0)));
            }
        }
    }
}
