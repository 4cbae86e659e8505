//! Levelt companion matrices of a hypergeometric equation.
//!
//! Given `det(t - h0) = t^k + A1 t^{k-1} + ... + Ak` and
//! `det(t - h_inf^{-1}) = t^k + B1 t^{k-1} + ... + Bk`, the monodromy around 0 and
//! infinity are companion matrices and `h1 = (h0 h_inf)^{-1}` is a pseudo-reflection.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::combinat::signed_binomial;
use crate::error::{Error, Result};
use crate::exact::{int, Matrix, Scalar};

/// Local exponents at 0 (`alpha`) and at infinity (`beta`).
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentData {
    pub alpha: Vec<Scalar>,
    pub beta: Vec<Scalar>,
}

impl ExponentData {
    pub fn new(alpha: Vec<Scalar>, beta: Vec<Scalar>) -> Result<Self> {
        if alpha.len() != beta.len() || alpha.len() < 2 {
            return Err(Error::ExponentLength {
                alpha: alpha.len(),
                beta: beta.len(),
            });
        }
        Ok(ExponentData { alpha, beta })
    }

    /// `alpha_l = l/k`, `beta_l = 0`.
    pub fn projective_space(k: usize) -> Result<Self> {
        check_rank(k)?;
        let kk = k as i64;
        Self::new(
            (1..=kk).map(|l| Scalar::new(l.into(), kk.into())).collect(),
            vec![Scalar::zero(); k],
        )
    }

    pub fn k(&self) -> usize {
        self.alpha.len()
    }
}

/// Coefficients `A1..Ak` and `B1..Bk` of the two characteristic polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharCoeffPair {
    pub a: Vec<Scalar>,
    pub b: Vec<Scalar>,
}

impl CharCoeffPair {
    pub fn k(&self) -> usize {
        self.a.len()
    }
}

pub(crate) fn check_rank(k: usize) -> Result<()> {
    if k < 2 {
        Err(Error::RankTooSmall(k))
    } else {
        Ok(())
    }
}

fn unipotent_b(k: usize) -> Vec<Scalar> {
    (1..=k as i64)
        .map(|i| signed_binomial(i, k as u64, i))
        .collect()
}

/// `t^k - 1` and `(t - 1)^k`.
pub fn cp_char_coeffs(k: usize) -> Result<CharCoeffPair> {
    check_rank(k)?;
    let mut a = vec![Scalar::zero(); k];
    a[k - 1] = int(-1);
    Ok(CharCoeffPair {
        a,
        b: unipotent_b(k),
    })
}

/// `t^k + 1` and `(t - 1)^k`: the sign-twisted pair whose group carries the Gram form.
pub fn twisted_cp_char_coeffs(k: usize) -> Result<CharCoeffPair> {
    check_rank(k)?;
    let mut a = vec![Scalar::zero(); k];
    a[k - 1] = int(1);
    Ok(CharCoeffPair {
        a,
        b: unipotent_b(k),
    })
}

/// Controls for [`char_coeffs_from_exponents`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SnapOptions {
    /// Requested decimal digits; the acceptance threshold is `10^(-precision/2)`.
    /// Double precision caps the effective value at 24.
    pub precision: u32,
    pub max_denominator: i64,
}

impl Default for SnapOptions {
    fn default() -> Self {
        SnapOptions {
            precision: 24,
            max_denominator: 1_000_000,
        }
    }
}

/// `x mod 1` in `[0, 1)`.
fn frac_part(x: &Scalar) -> Scalar {
    x - x.floor()
}

/// Coefficients of `prod (t - exp(2 pi i a))`, highest degree dropped.
fn expand_roots(exps: &[Scalar]) -> Vec<Complex64> {
    let mut poly = vec![Complex64::new(1.0, 0.0)];
    for e in exps {
        let theta = 2.0 * PI * frac_part(e).to_f64().unwrap_or(f64::NAN);
        let root = Complex64::from_polar(1.0, theta);
        let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= c * root;
        }
        poly = next;
    }
    poly.remove(0);
    poly
}

/// Best rational approximation with bounded denominator (continued fractions).
fn snap(x: f64, max_den: i64) -> Option<Scalar> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = libm::floor(r);
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let f = r - a;
        if f.abs() < 1e-15 {
            break;
        }
        r = 1.0 / f;
    }
    if k1 == 0 {
        return None;
    }
    Some(Scalar::new(BigInt::from(h1), BigInt::from(k1)))
}

fn snap_all(exps: &[Scalar], opts: SnapOptions, offset: usize) -> Result<Vec<Scalar>> {
    let digits = opts.precision.min(24) as i32;
    let tol = libm::pow(10.0, -(digits as f64) / 2.0);
    expand_roots(exps)
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let fail = |deviation| Error::SnapFailure {
                index: offset + i + 1,
                deviation,
            };
            if c.im.abs() > tol {
                return Err(fail(c.im.abs()));
            }
            let q = snap(c.re, opts.max_denominator).ok_or(fail(f64::INFINITY))?;
            let dev = (q.to_f64().unwrap_or(f64::NAN) - c.re).abs();
            if dev.is_nan() || dev > tol {
                return Err(fail(dev));
            }
            Ok(q)
        })
        .collect()
}

/// Exponents reduced mod 1 and sorted.
fn reduced_sorted(exps: &[Scalar]) -> Vec<Scalar> {
    let mut v: Vec<Scalar> = exps.iter().map(frac_part).collect();
    v.sort();
    v
}

/// Checks that `{m a mod 1}` equals `{a mod 1}` for every unit `m` modulo the common denominator.
fn check_galois(exps: &[Scalar]) -> Result<()> {
    let base = reduced_sorted(exps);
    let n = base.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
    let Some(n) = n.to_u64() else {
        return Err(Error::NotGaloisStable { multiplier: 0 });
    };
    for m in 2..n {
        if m.gcd(&n) != 1 {
            continue;
        }
        let mm = Scalar::from_integer(BigInt::from(m));
        let image: Vec<Scalar> = base.iter().map(|a| a * &mm).collect();
        if reduced_sorted(&image) != base {
            return Err(Error::NotGaloisStable { multiplier: m });
        }
    }
    Ok(())
}

/// Expands both exponent products in floating point and snaps the coefficients to rationals.
///
/// Fails with [`Error::SnapFailure`] when a coefficient is not rational within tolerance,
/// which happens exactly when the exponent multiset is not Galois-stable.
pub fn char_coeffs_from_exponents(e: &ExponentData, opts: SnapOptions) -> Result<CharCoeffPair> {
    let k = e.k();
    let a = snap_all(&e.alpha, opts, 0)?;
    let b = snap_all(&e.beta, opts, k)?;
    check_galois(&e.alpha)?;
    check_galois(&e.beta)?;
    Ok(CharCoeffPair { a, b })
}

/// Companion matrix with sub-diagonal ones and last column `(-ck, ..., -c1)`.
fn companion(c: &[Scalar]) -> Matrix {
    let k = c.len();
    Matrix::from_fn(k, k, |i, j| {
        if j == k - 1 {
            -c[k - 1 - i].clone()
        } else if i == j + 1 {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

pub fn companion_h0(c: &CharCoeffPair) -> Matrix {
    companion(&c.a)
}

/// Inverse of the companion matrix built from the `B` coefficients.
pub fn companion_hinf(c: &CharCoeffPair) -> Result<Matrix> {
    if c.b.last().map_or(true, Zero::is_zero) {
        return Err(Error::Singular);
    }
    companion(&c.b).inverse()
}

/// `(h0 h_inf)^{-1}`, checked to be a pseudo-reflection.
pub fn h1_from(h0: &Matrix, hinf: &Matrix) -> Result<Matrix> {
    let h1 = h0.checked_mul(hinf)?.inverse()?;
    let rank = (&Matrix::identity(h1.rows()) - &h1).rank();
    if rank != 1 {
        return Err(Error::NotPseudoReflection { rank });
    }
    Ok(h1)
}

/// The three local monodromies in Levelt form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeveltTriple {
    pub h0: Matrix,
    pub hinf: Matrix,
    pub h1: Matrix,
}

impl LeveltTriple {
    pub fn from_coeffs(c: &CharCoeffPair) -> Result<Self> {
        let h0 = companion_h0(c);
        let hinf = companion_hinf(c)?;
        let h1 = h1_from(&h0, &hinf)?;
        Ok(LeveltTriple { h0, hinf, h1 })
    }

    pub fn k(&self) -> usize {
        self.h0.rows()
    }
}

pub fn cp_levelt(k: usize) -> Result<LeveltTriple> {
    LeveltTriple::from_coeffs(&cp_char_coeffs(k)?)
}

pub fn twisted_cp_levelt(k: usize) -> Result<LeveltTriple> {
    LeveltTriple::from_coeffs(&twisted_cp_char_coeffs(k)?)
}

/// Descending coefficient vector `[1, c1, ..., ck]` of `(t - 1)^k`.
pub fn unipotent_charpoly(k: usize) -> Vec<Scalar> {
    (0..=k as i64)
        .map(|i| signed_binomial(i, k as u64, i))
        .collect()
}

/// Descending coefficient vector of `t^k + sign`.
pub fn binomial_charpoly(k: usize, sign: i64) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); k + 1];
    v[0] = Scalar::one();
    v[k] = int(sign);
    v
}

/// Descending coefficients of `(t - 1)^{k-1} (t - (-1)^{k-1})`, the charpoly of the CP `h1`.
pub fn cp_h1_charpoly(k: usize) -> Vec<Scalar> {
    let mut p = unipotent_charpoly(k - 1);
    let root = if k % 2 == 1 { int(1) } else { int(-1) };
    p.push(Scalar::zero());
    for i in (1..p.len()).rev() {
        let prev = p[i - 1].clone();
        p[i] -= &root * prev;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn cp_coefficients() {
        let c2 = cp_char_coeffs(2).unwrap();
        assert_eq!((c2.a, c2.b), (ints(&[0, -1]), ints(&[-2, 1])));
        let c3 = cp_char_coeffs(3).unwrap();
        assert_eq!((c3.a, c3.b), (ints(&[0, 0, -1]), ints(&[-3, 3, -1])));
        assert_eq!(cp_char_coeffs(5).unwrap().b, ints(&[-5, 10, -10, 5, -1]));
        assert_eq!(cp_char_coeffs(1), Err(Error::RankTooSmall(1)));
    }

    #[test]
    fn companions_k2_k3() {
        let t2 = cp_levelt(2).unwrap();
        assert_eq!(t2.h0, Matrix::from_i64_rows(&[&[0, 1], &[1, 0]]));
        assert_eq!(t2.hinf, Matrix::from_i64_rows(&[&[2, 1], &[-1, 0]]));
        assert_eq!(t2.h1, Matrix::from_i64_rows(&[&[-1, 0], &[2, 1]]));

        let t3 = cp_levelt(3).unwrap();
        assert_eq!(
            t3.h0,
            Matrix::from_i64_rows(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]])
        );
        assert_eq!(t3.hinf.column(0), ints(&[3, -3, 1]));
        // the first column follows the signed-binomial pattern, identity elsewhere
        assert_eq!(
            t3.h1,
            Matrix::from_i64_rows(&[&[1, 0, 0], &[-3, 1, 0], &[3, 0, 1]])
        );
    }

    #[test]
    fn h1_general_shape() {
        for k in 2..=7usize {
            let h1 = cp_levelt(k).unwrap().h1;
            let kk = k as i64;
            let expected: Vec<Scalar> = (0..kk)
                .map(|i| {
                    if i == 0 {
                        signed_binomial(kk - 1, 1, 0)
                    } else {
                        signed_binomial(kk - 1 - i, k as u64, i)
                    }
                })
                .collect();
            assert_eq!(h1.column(0), expected, "k={k}");
            for j in 1..k {
                let mut e = vec![Scalar::zero(); k];
                e[j] = Scalar::one();
                assert_eq!(h1.column(j), e);
            }
        }
    }

    #[test]
    fn degenerate_h1_rejected() {
        let id = Matrix::identity(3);
        assert_eq!(
            h1_from(&id, &id),
            Err(Error::NotPseudoReflection { rank: 0 })
        );
    }

    #[test]
    fn charpolys_of_presets() {
        for k in 2..=10 {
            let t = cp_levelt(k).unwrap();
            assert_eq!(t.h0.charpoly().unwrap(), binomial_charpoly(k, -1));
            assert_eq!(t.hinf.charpoly().unwrap(), unipotent_charpoly(k));
            assert_eq!(t.h1.charpoly().unwrap(), cp_h1_charpoly(k));
            assert!(t.h0.pow(k as i64).unwrap().is_identity());
            let tw = twisted_cp_levelt(k).unwrap();
            assert_eq!(tw.h0.charpoly().unwrap(), binomial_charpoly(k, 1));
            assert_eq!(tw.h0.pow(k as i64).unwrap(), -&Matrix::identity(k));
        }
    }

    #[test]
    fn snapping_roots_of_unity() {
        let e = ExponentData::new(
            vec![frac(1, 3), frac(2, 3), int(1)],
            vec![int(0), int(0), int(0)],
        )
        .unwrap();
        let c = char_coeffs_from_exponents(&e, SnapOptions::default()).unwrap();
        assert_eq!(c.a, ints(&[0, 0, -1]));
        assert_eq!(c.b, ints(&[-3, 3, -1]));
        for k in 2..=8 {
            let c = char_coeffs_from_exponents(
                &ExponentData::projective_space(k).unwrap(),
                SnapOptions::default(),
            )
            .unwrap();
            assert_eq!(c, cp_char_coeffs(k).unwrap());
        }
    }

    #[test]
    fn snapping_twisted_exponents() {
        // alpha_l = (2l - 1)/(2k) gives t^k + 1
        for k in 2..=6i64 {
            let alpha = (1..=k).map(|l| frac(2 * l - 1, 2 * k)).collect();
            let e = ExponentData::new(alpha, vec![int(0); k as usize]).unwrap();
            let c = char_coeffs_from_exponents(&e, SnapOptions::default()).unwrap();
            assert_eq!(c, twisted_cp_char_coeffs(k as usize).unwrap());
        }
    }

    #[test]
    fn non_galois_stable_rejected() {
        let e = ExponentData::new(vec![frac(1, 5), frac(1, 7)], vec![int(0), int(0)]).unwrap();
        let err = char_coeffs_from_exponents(&e, SnapOptions::default()).unwrap_err();
        assert!(matches!(err, Error::SnapFailure { .. }), "{err:?}");
    }

    #[test]
    fn galois_check_directly() {
        assert!(check_galois(&[frac(1, 5), frac(2, 5), frac(3, 5), frac(4, 5)]).is_ok());
        assert_eq!(
            check_galois(&[frac(1, 5), frac(4, 5)]),
            Err(Error::NotGaloisStable { multiplier: 2 })
        );
    }

    #[test]
    fn snap_continued_fraction() {
        assert_eq!(snap(0.333333333333, 1000), Some(frac(1, 3)));
        assert_eq!(snap(-2.5, 10), Some(frac(-5, 2)));
        assert_eq!(snap(f64::NAN, 10), None);
    }
}
