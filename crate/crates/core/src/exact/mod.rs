//! Dense matrices over the rationals.
//!
//! Matrices act on column vectors. Storage is row-major.

mod elim;
mod modular;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::RaggedRows);
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for tests and tables. Panics on ragged input.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let v = rows
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        Self::from_rows(v).expect("ragged integer rows")
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                Scalar::zero()
            }
        })
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

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn mismatch(&self, other: &Self, op: &'static str) -> Error {
        Error::DimensionMismatch {
            op,
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: other.rows,
            right_cols: other.cols,
        }
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(self.mismatch(other, "multiply"));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(self.mismatch(other, "add"));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(self.mismatch(other, "subtract"));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                op: "matrix-vector multiply",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: v.len(),
                right_cols: 1,
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Integer powers; negative exponents go through the inverse.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let n = self.require_square()?;
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::identity(n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<Scalar> {
        let n = self.require_square()?;
        Ok((0..n).fold(Scalar::zero(), |acc, i| acc + self.get(i, i)))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|v| v.is_integer())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..=i).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    /// Lower triangular with ones on the diagonal.
    pub fn is_lower_unitriangular(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self.get(i, i).is_one() && (i + 1..self.cols).all(|j| self.get(i, j).is_zero())
            })
    }

    /// First position (row-major) where two equally shaped matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Some((0, 0));
        }
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|p| (p / self.cols, p % self.cols))
    }

    /// Entries rendered as `p` or `p/q`.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        use alloc::string::ToString;
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.to_string()).collect())
            .collect()
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(scalar_to_f64).collect())
            .collect()
    }

    /// Evaluate `c[0] M^{n} + c[1] M^{n-1} + ... + c[n] I` by Horner's rule.
    pub fn eval_poly_desc(&self, coeffs: &[Scalar]) -> Result<Self> {
        let n = self.require_square()?;
        let mut acc = Self::zeros(n, n);
        for c in coeffs {
            acc = &acc * self;
            for i in 0..n {
                acc.data[i * n + i] += c;
            }
        }
        Ok(acc)
    }

    /// Characteristic polynomial `det(tI - M)` as `[1, c1, ..., cn]`, highest degree first.
    ///
    /// Faddeev–LeVerrier; exact over the rationals.
    pub fn charpoly(&self) -> Result<Vec<Scalar>> {
        let n = self.require_square()?;
        let mut coeffs = vec![Scalar::one()];
        let mut m = Self::zeros(n, n);
        for j in 1..=n {
            // M_j = A M_{j-1} + c_{j-1} I,   c_j = -tr(A M_j) / j
            let mut mj = self * &m;
            for i in 0..n {
                mj.data[i * n + i] += &coeffs[j - 1];
            }
            let am = self * &mj;
            let c = -am.trace()? / int(j as i64);
            coeffs.push(c);
            m = mj;
        }
        Ok(coeffs)
    }

    pub fn rank(&self) -> usize {
        elim::rank(self)
    }

    pub fn det(&self) -> Result<Scalar> {
        self.require_square()?;
        Ok(elim::det(self))
    }

    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        elim::inverse(self).ok_or(Error::Singular)
    }

    /// Basis of the right kernel `{v : M v = 0}` in reduced echelon form.
    ///
    /// Vector `i` has a 1 at the `i`-th free column and 0 at the other free columns.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        modular::kernel_basis(self).unwrap_or_else(|| elim::kernel_basis(self))
    }

    /// Kernel via exact rational elimination only.
    pub fn kernel_basis_exact(&self) -> Vec<Vec<Scalar>> {
        elim::kernel_basis(self)
    }
}

pub fn scalar_to_f64(v: &Scalar) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{:?}", self.to_string_rows())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_string_rows();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{c:>width$}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    /// Panics on shape mismatch; use [`Matrix::checked_mul`] otherwise.
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix shape mismatch")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("matrix shape mismatch")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).expect("matrix shape mismatch")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&-Scalar::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64_rows(rows)
    }

    #[test]
    fn multiply_and_inverse() {
        let a = m(&[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv, m(&[&[4, -1], &[-7, 2]]));
        assert!((&a * &inv).is_identity());
        assert_eq!(a.pow(-2).unwrap(), &inv * &inv);
        assert_eq!(a.pow(0).unwrap(), Matrix::identity(2));
    }

    #[test]
    fn singular_inverse_fails() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(a.inverse(), Err(Error::Singular));
        assert_eq!(a.rank(), 1);
        assert_eq!(a.det().unwrap(), int(0));
    }

    #[test]
    fn shape_errors() {
        let a = m(&[&[1, 2, 3]]);
        assert!(matches!(
            a.checked_mul(&a),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(a.inverse(), Err(Error::NotSquare { .. })));
        assert_eq!(
            Matrix::from_rows(vec![vec![int(1)], vec![]]),
            Err(Error::RaggedRows)
        );
    }

    #[test]
    fn charpoly_of_companion() {
        // companion of t^3 - 2t^2 + 5t - 7
        let c = m(&[&[0, 0, 7], &[1, 0, -5], &[0, 1, 2]]);
        assert_eq!(
            c.charpoly().unwrap(),
            vec![int(1), int(-2), int(5), int(-7)]
        );
        assert!(c.eval_poly_desc(&c.charpoly().unwrap()).unwrap().is_zero());
        assert_eq!(c.det().unwrap(), int(7));
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let k = a.kernel_basis();
        assert_eq!(k, vec![vec![int(-1), int(-1), int(1)]]);
        assert_eq!(k, a.kernel_basis_exact());
        assert!(Matrix::identity(3).kernel_basis().is_empty());
    }

    #[test]
    fn rational_entries() {
        let a = Matrix::from_rows(vec![
            vec![frac(1, 2), frac(1, 3)],
            vec![frac(1, 4), frac(1, 5)],
        ])
        .unwrap();
        assert_eq!(a.det().unwrap(), frac(1, 60));
        assert!((&a * &a.inverse().unwrap()).is_identity());
    }

    #[test]
    fn predicates() {
        assert!(m(&[&[1, 0], &[5, 1]]).is_lower_unitriangular());
        assert!(!m(&[&[1, 1], &[0, 1]]).is_lower_unitriangular());
        assert!(m(&[&[0, 2], &[-2, 0]]).is_antisymmetric());
        assert!(m(&[&[1, 2], &[2, 0]]).is_symmetric());
        assert_eq!(
            m(&[&[1, 2], &[3, 4]]).first_difference(&m(&[&[1, 2], &[3, 5]])),
            Some((1, 1))
        );
    }
}
