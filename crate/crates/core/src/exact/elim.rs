//! Gaussian elimination over the rationals.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{Matrix, Scalar};

/// Reduced row echelon form. Returns the reduced rows and the pivot columns.
pub(super) fn rref(m: &Matrix) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut rows = m.to_rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r][c..].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub(super) fn rank(m: &Matrix) -> usize {
    rref(m).1.len()
}

pub(super) fn det(m: &Matrix) -> Scalar {
    let n = m.rows();
    let mut rows = m.to_rows();
    let mut det = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !rows[i][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            rows.swap(c, p);
            det = -det;
        }
        det *= &rows[c][c];
        let inv = rows[c][c].recip();
        let pivot_row = rows[c].clone();
        for row in rows.iter_mut().skip(c + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] * &inv;
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x -= &f * y;
            }
        }
    }
    det
}

/// Gauss–Jordan on `[M | I]`.
pub(super) fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.rows();
    let aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m.get(i, j).clone()
        } else if j - n == i {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    });
    let (rows, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| rows[i][n + j].clone()))
}

pub(super) fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let (rows, pivots) = rref(m);
    basis_from_rref(m.cols(), &pivots, |i, f| rows[i][f].clone())
}

/// Kernel basis from a reduced echelon form given by pivot columns and an entry accessor.
pub(super) fn basis_from_rref(
    cols: usize,
    pivots: &[usize],
    entry: impl Fn(usize, usize) -> Scalar,
) -> Vec<Vec<Scalar>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -entry(i, f);
            }
            v
        })
        .collect()
}
