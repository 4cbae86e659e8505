//! Small dense complex matrices in double precision.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct NumericMatrix {
    pub k: usize,
    /// Row-major entries.
    pub entries: Vec<Complex64>,
    /// Accumulated local error estimate of the integration that produced the matrix.
    pub estimated_error: f64,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

impl NumericMatrix {
    pub fn zeros(k: usize) -> Self {
        NumericMatrix {
            k,
            entries: vec![ZERO; k * k],
            estimated_error: 0.0,
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k);
        for i in 0..k {
            m.entries[i * k + i] = ONE;
        }
        m
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let k = rows.len();
        let entries = rows
            .iter()
            .flatten()
            .map(|&x| Complex64::new(x, 0.0))
            .collect();
        NumericMatrix {
            k,
            entries,
            estimated_error: 0.0,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.k + j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let k = self.k;
        let mut out = Self::zeros(k);
        for i in 0..k {
            for l in 0..k {
                let a = self.entries[i * k + l];
                for j in 0..k {
                    out.entries[i * k + j] += a * other.entries[l * k + j];
                }
            }
        }
        out.estimated_error = self.estimated_error + other.estimated_error;
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        NumericMatrix {
            k: self.k,
            entries,
            estimated_error: self.estimated_error + other.estimated_error,
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.k).map(|i| self.get(i, i)).sum()
    }

    /// Gauss–Jordan with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        let k = self.k;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(k).entries;
        for c in 0..k {
            let p = (c..k)
                .max_by(|&x, &y| a[x * k + c].norm().total_cmp(&a[y * k + c].norm()))
                .unwrap_or(c);
            if a[p * k + c].norm() == 0.0 {
                return Err(Error::Singular);
            }
            for j in 0..k {
                a.swap(c * k + j, p * k + j);
                inv.swap(c * k + j, p * k + j);
            }
            let d = ONE / a[c * k + c];
            for j in 0..k {
                a[c * k + j] *= d;
                inv[c * k + j] *= d;
            }
            for r in 0..k {
                if r == c {
                    continue;
                }
                let f = a[r * k + c];
                if f == ZERO {
                    continue;
                }
                for j in 0..k {
                    let (x, y) = (a[c * k + j], inv[c * k + j]);
                    a[r * k + j] -= f * x;
                    inv[r * k + j] -= f * y;
                }
            }
        }
        Ok(NumericMatrix {
            k,
            entries: inv,
            estimated_error: self.estimated_error,
        })
    }

    /// `det(t - M)` as `[1, c1, ..., ck]` by Faddeev–LeVerrier.
    pub fn charpoly(&self) -> Vec<Complex64> {
        let k = self.k;
        let mut coeffs = vec![ONE];
        let mut m = Self::zeros(k);
        for j in 1..=k {
            let mut mj = self.mul(&m);
            for i in 0..k {
                mj.entries[i * k + i] += coeffs[j - 1];
            }
            let c = -self.mul(&mj).trace() / j as f64;
            coeffs.push(c);
            m = mj;
        }
        coeffs
    }

    pub fn det(&self) -> Complex64 {
        let c = self.charpoly();
        let sign = if self.k % 2 == 0 { 1.0 } else { -1.0 };
        c[self.k] * sign
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Singular values in decreasing order (one-sided Jacobi).
    pub fn singular_values(&self) -> Vec<f64> {
        let k = self.k;
        // columns of the working copy
        let mut cols: Vec<Vec<Complex64>> = (0..k)
            .map(|j| (0..k).map(|i| self.get(i, j)).collect())
            .collect();
        for _sweep in 0..60 {
            let mut off = 0.0f64;
            for p in 0..k {
                for q in p + 1..k {
                    let alpha: f64 = cols[p].iter().map(|x| x.norm_sqr()).sum();
                    let beta: f64 = cols[q].iter().map(|x| x.norm_sqr()).sum();
                    let gamma: Complex64 = cols[p]
                        .iter()
                        .zip(&cols[q])
                        .map(|(a, b)| a.conj() * b)
                        .sum();
                    let g = gamma.norm();
                    if g == 0.0 || g <= 1e-15 * libm::sqrt(alpha * beta) {
                        continue;
                    }
                    off = off.max(g / libm::sqrt(alpha * beta));
                    // rotate in the plane of columns p, q to zero their inner product
                    let phase = gamma / g;
                    let zeta = (beta - alpha) / (2.0 * g);
                    let t = zeta.signum() / (zeta.abs() + libm::sqrt(1.0 + zeta * zeta));
                    let t = if zeta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / libm::sqrt(1.0 + t * t);
                    let s = c * t;
                    let (lo, hi) = cols.split_at_mut(q);
                    for (x, y) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                        let (a, b) = (*x, *y);
                        *x = a * c - b * phase.conj() * s;
                        *y = a * phase * s + b * c;
                    }
                }
            }
            if off < 1e-15 {
                break;
            }
        }
        let mut sv: Vec<f64> = cols
            .iter()
            .map(|c| libm::sqrt(c.iter().map(|x| x.norm_sqr()).sum::<f64>()))
            .collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        sv
    }
}
