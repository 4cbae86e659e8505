//! Quadratic invariants `g X g^T = X` of a matrix group and their band structure.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::combinat::signed_binomial;
use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};
use crate::group::Variant;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSpace {
    pub k: usize,
    /// Each element scaled so that its first nonzero entry (row-major) is `+1`.
    pub basis: Vec<Matrix>,
}

impl InvariantSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// The unique invariant up to scale.
    pub fn single(&self) -> Result<&Matrix> {
        match self.basis.as_slice() {
            [x] => Ok(x),
            _ => Err(Error::InvariantDimension(self.dimension())),
        }
    }

    /// Whether both spaces span the same subspace of `k x k` matrices.
    pub fn same_span(&self, other: &InvariantSpace) -> bool {
        if self.k != other.k || self.dimension() != other.dimension() {
            return false;
        }
        if self.basis.is_empty() {
            return true;
        }
        let rows: Vec<Vec<Scalar>> = self
            .basis
            .iter()
            .chain(&other.basis)
            .map(|m| m.entries().to_vec())
            .collect();
        Matrix::from_rows(rows)
            .map(|m| m.rank() == self.dimension())
            .unwrap_or(false)
    }
}

/// Rows of the linear map `vec(X) -> vec(g X g^T - X)`, with `vec` row-major.
fn constraint_rows(g: &Matrix, out: &mut Vec<Vec<Scalar>>) {
    let k = g.rows();
    for a in 0..k {
        for b in 0..k {
            let mut row = vec![Scalar::zero(); k * k];
            for c in 0..k {
                let gac = g.get(a, c);
                if gac.is_zero() {
                    continue;
                }
                for d in 0..k {
                    let gbd = g.get(b, d);
                    if !gbd.is_zero() {
                        row[c * k + d] += gac * gbd;
                    }
                }
            }
            row[a * k + b] -= Scalar::one();
            out.push(row);
        }
    }
}

fn normalize_first_nonzero(m: Matrix) -> Matrix {
    match m.entries().iter().find(|v| !v.is_zero()) {
        Some(p) if !p.is_one() => m.scale(&p.recip()),
        _ => m,
    }
}

/// All `X` with `g X g^T = X` for every generator.
pub fn quadratic_invariant_space(gens: &[Matrix], k: usize) -> Result<InvariantSpace> {
    let mut rows = Vec::with_capacity(gens.len() * k * k);
    for g in gens {
        if g.rows() != k || g.cols() != k {
            return Err(Error::DimensionMismatch {
                op: "invariant system",
                left_rows: k,
                left_cols: k,
                right_rows: g.rows(),
                right_cols: g.cols(),
            });
        }
        constraint_rows(g, &mut rows);
    }
    let basis = if rows.is_empty() {
        (0..k * k)
            .map(|p| {
                Matrix::from_fn(k, k, |i, j| {
                    if i * k + j == p {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                })
            })
            .collect()
    } else {
        Matrix::from_rows(rows)?
            .kernel_basis()
            .into_iter()
            .map(|v| normalize_first_nonzero(Matrix::from_fn(k, k, |i, j| v[i * k + j].clone())))
            .collect()
    };
    Ok(InvariantSpace { k, basis })
}

/// Invariant space of the full Kummer group.
pub fn group_invariant(k: usize, variant: Variant) -> Result<InvariantSpace> {
    let g = variant.generators(k)?;
    quadratic_invariant_space(&g.generator_matrices(), k)
}

/// Invariant space of `{h0, h_inf}`, checked to coincide with that of the Kummer group.
pub fn invariant_of_h0_hinf(k: usize, variant: Variant) -> Result<InvariantSpace> {
    let t = variant.levelt(k)?;
    let small = quadratic_invariant_space(&[t.h0.clone(), t.hinf.clone()], k)?;
    let full = group_invariant(k, variant)?;
    if !small.same_span(&full) {
        return Err(Error::InvariantMismatch);
    }
    Ok(small)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    AntiSymmetric,
    Neither,
}

/// How the bands of a Toeplitz matrix continue across the wrap: `b_d` against `b_{d-k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WrapSign {
    /// `b_d = b_{d-k}` (circulant).
    Cyclic,
    /// `b_d = -b_{d-k}`.
    NegaCyclic,
    Neither,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub check: &'static str,
    /// Band offset `d = j - i` (or row index for row checks) of the first failure.
    pub band: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub k: usize,
    pub symmetry: Symmetry,
    /// Symmetric for odd `k`, anti-symmetric with zero diagonal for even `k`.
    pub parity_as_expected: bool,
    pub zero_diagonal: bool,
    /// Band values `b_d = x[i][i+d]` for `d = -(k-1)..=k-1`, when `x` is Toeplitz.
    pub bands: Option<Vec<Scalar>>,
    /// Even `k`: scale `s` with `b_d = (-1)^d C(k,d) s`, and whether all bands follow it.
    pub band_scale: Option<Scalar>,
    pub binomial_bands: Option<bool>,
    /// Odd `k`, invertible `x`: structure of `x^{-1}`.
    pub inverse_toeplitz: Option<bool>,
    pub inverse_wrap: Option<WrapSign>,
    /// Rows `1..k-1` of `x^{-1}` annihilate `v0 = (1 + (-1)^{k-1}, -C(k,1), C(k,2), ...)`.
    pub v0_annihilated: Option<bool>,
    pub violation: Option<Violation>,
}

/// Band values of a Toeplitz matrix, or the first offending band.
fn toeplitz_bands(x: &Matrix) -> core::result::Result<Vec<Scalar>, i64> {
    let k = x.rows() as i64;
    let mut out = Vec::with_capacity((2 * k - 1) as usize);
    for d in -(k - 1)..k {
        let (i0, j0) = if d >= 0 { (0, d) } else { (-d, 0) };
        let b = x.get(i0 as usize, j0 as usize);
        let len = k - d.abs();
        if (1..len).any(|t| x.get((i0 + t) as usize, (j0 + t) as usize) != b) {
            return Err(d);
        }
        out.push(b.clone());
    }
    Ok(out)
}

fn band(bands: &[Scalar], k: usize, d: i64) -> &Scalar {
    &bands[(d + k as i64 - 1) as usize]
}

fn wrap_sign(bands: &[Scalar], k: usize) -> WrapSign {
    let kk = k as i64;
    let cyc = (1..kk).all(|d| band(bands, k, d) == band(bands, k, d - kk));
    let neg = (1..kk).all(|d| *band(bands, k, d) == -band(bands, k, d - kk));
    match (cyc, neg) {
        (true, _) => WrapSign::Cyclic,
        (false, true) => WrapSign::NegaCyclic,
        _ => WrapSign::Neither,
    }
}

pub fn v0_vector(k: usize) -> Vec<Scalar> {
    let kk = k as i64;
    (0..kk)
        .map(|i| {
            let c = signed_binomial(i, k as u64, i);
            if i == 0 {
                c + signed_binomial(kk - 1, 1, 0)
            } else {
                c
            }
        })
        .collect()
}

/// Classifies an invariant matrix. Never fails for square input; problems are reported.
pub fn structure_report(x: &Matrix, k: usize) -> Result<StructureReport> {
    if x.rows() != k || x.cols() != k {
        return Err(Error::NotSquare {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    let odd = k % 2 == 1;
    let symmetry = if x.is_symmetric() {
        Symmetry::Symmetric
    } else if x.is_antisymmetric() {
        Symmetry::AntiSymmetric
    } else {
        Symmetry::Neither
    };
    let zero_diagonal = (0..k).all(|i| x.get(i, i).is_zero());
    let parity_as_expected = if odd {
        symmetry == Symmetry::Symmetric
    } else {
        symmetry == Symmetry::AntiSymmetric && zero_diagonal
    };
    let mut violation = (!parity_as_expected).then_some(Violation {
        check: "parity symmetry",
        band: 0,
    });
    let mut note = |v: Violation| {
        if violation.is_none() {
            violation = Some(v);
        }
    };

    let bands = toeplitz_bands(x);
    let mut report = StructureReport {
        k,
        symmetry,
        parity_as_expected,
        zero_diagonal,
        bands: bands.clone().ok(),
        band_scale: None,
        binomial_bands: None,
        inverse_toeplitz: None,
        inverse_wrap: None,
        v0_annihilated: None,
        violation: None,
    };

    if !odd {
        match &bands {
            Err(d) => note(Violation {
                check: "toeplitz",
                band: *d,
            }),
            Ok(b) => {
                // b_1 = -C(k,1) s
                let scale =
                    -band(b, k, 1) / Scalar::from_integer(crate::combinat::binomial(k as u64, 1));
                let mut holds = true;
                for d in 1..k as i64 {
                    let expect = signed_binomial(d, k as u64, d) * &scale;
                    if *band(b, k, d) != expect || *band(b, k, -d) != -expect {
                        holds = false;
                        note(Violation {
                            check: "binomial bands",
                            band: d,
                        });
                        break;
                    }
                }
                report.band_scale = Some(scale);
                report.binomial_bands = Some(holds);
            }
        }
    } else if let Ok(inv) = x.inverse() {
        match toeplitz_bands(&inv) {
            Err(d) => {
                report.inverse_toeplitz = Some(false);
                note(Violation {
                    check: "inverse toeplitz",
                    band: d,
                });
            }
            Ok(b) => {
                report.inverse_toeplitz = Some(true);
                report.inverse_wrap = Some(wrap_sign(&b, k));
                let v0 = v0_vector(k);
                let mut ok = true;
                for l in 1..k {
                    let dot = inv
                        .row(l)
                        .iter()
                        .zip(&v0)
                        .fold(Scalar::zero(), |acc, (a, b)| acc + a * b);
                    if !dot.is_zero() {
                        ok = false;
                        note(Violation {
                            check: "v0 annihilation",
                            band: l as i64,
                        });
                        break;
                    }
                }
                report.v0_annihilated = Some(ok);
            }
        }
    } else {
        note(Violation {
            check: "invertible",
            band: 0,
        });
    }
    report.violation = violation;
    Ok(report)
}
