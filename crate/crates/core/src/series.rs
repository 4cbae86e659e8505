//! The holomorphic solution `I0(s) = sum (km)!/(m!)^k s^m` of
//! `[theta^k - k^k s (theta + 1/k) ... (theta + k/k)] I = 0`, `theta = s d/ds`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::combinat::factorial;
use crate::error::{Error, Result};
use crate::exact::{int, Scalar};
use crate::levelt::check_rank;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCoeffs {
    pub k: usize,
    /// `c_0, ..., c_N`.
    pub coeffs: Vec<BigInt>,
}

impl SeriesCoeffs {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// `(km)! / (m!)^k`.
pub fn closed_form_coefficient(k: usize, m: usize) -> BigInt {
    factorial((k * m) as u64) / Pow::pow(factorial(m as u64), k as u32)
}

/// `(km)! / (km - k)! = (km - k + 1) ... (km)`.
fn falling_block(k: usize, m: usize) -> BigInt {
    ((k * m - k + 1)..=(k * m)).fold(BigInt::one(), |acc, x| acc * x)
}

/// Coefficients from `m^k c_m = [(km)!/(km-k)!] c_{m-1}`, checked against the closed form.
pub fn series_coefficients(k: usize, n: usize) -> Result<SeriesCoeffs> {
    check_rank(k)?;
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(BigInt::one());
    for m in 1..=n {
        let num = falling_block(k, m) * &coeffs[m - 1];
        let den = Pow::pow(BigInt::from(m), k as u32);
        if !(&num % &den).is_zero() {
            return Err(Error::Inconsistent("series recurrence left the integers"));
        }
        coeffs.push(num / den);
    }
    let mut fact_m = BigInt::one();
    let mut fact_km = BigInt::one();
    for (m, c) in coeffs.iter().enumerate() {
        if m > 0 {
            fact_m *= m;
            for x in (k * (m - 1) + 1)..=(k * m) {
                fact_km *= x;
            }
        }
        if c * Pow::pow(&fact_m, k as u32) != fact_km {
            return Err(Error::Inconsistent(
                "series coefficient differs from (km)!/(m!)^k",
            ));
        }
    }
    Ok(SeriesCoeffs { k, coeffs })
}

/// Result of applying the operator to a truncated series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorResidual {
    /// Coefficients of `s^0 .. s^N`; all zero for a correct series.
    pub coeffs: Vec<Scalar>,
    /// Coefficient of `s^{N+1}`, produced by the truncation itself.
    pub truncation_term: Scalar,
}

impl OperatorResidual {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// First degree with a nonzero residual.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

/// `k^k prod_l (x + l/k)`, evaluated exactly.
fn shifted_product(k: usize, x: &Scalar) -> Scalar {
    let kk = int(k as i64);
    (1..=k as i64).fold(Pow::pow(kk.clone(), k as u32), |acc, l| {
        acc * (x + int(l) / &kk)
    })
}

/// Applies `theta^k - k^k s prod (theta + l/k)` with `theta s^m = m s^m`.
pub fn apply_hg_operator(sc: &SeriesCoeffs) -> OperatorResidual {
    let k = sc.k;
    let c = |m: usize| Scalar::from_integer(sc.coeffs[m].clone());
    let n = sc.order();
    let mut coeffs = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut r = Pow::pow(int(m as i64), k as u32) * c(m);
        if m > 0 {
            r -= shifted_product(k, &int(m as i64 - 1)) * c(m - 1);
        }
        coeffs.push(r);
    }
    let truncation_term = -shifted_product(k, &int(n as i64)) * c(n);
    OperatorResidual {
        coeffs,
        truncation_term,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct I0Evaluation {
    /// Exact partial sum `sum_{m <= n} c_m s^m` when `s` is rational.
    pub partial_sum: Option<Scalar>,
    pub value: f64,
    /// Bound on `|I0(s) - partial sum|`; infinite outside the disc of convergence.
    pub tail_bound: f64,
    pub terms: usize,
    /// `|s| >= k^{-k}`: the series is not guaranteed to converge.
    pub radius_warning: bool,
}

/// Rounds a nonnegative exact bound up to a safe double.
fn upper_f64(x: &Scalar) -> f64 {
    let v = x.to_f64().unwrap_or(f64::INFINITY);
    v * (1.0 + 4.0 * f64::EPSILON) + f64::MIN_POSITIVE
}

/// Partial sum through `s^n` with the ratio-test tail bound
/// `c_{n+1} |s|^{n+1} / (1 - k^k |s|)`, using `c_{m+1}/c_m <= k^k`.
pub fn evaluate_i0(k: usize, s: &Scalar, n: usize) -> Result<I0Evaluation> {
    let sc = series_coefficients(k, n + 1)?;
    let mut sum = Scalar::zero();
    let mut pow = Scalar::one();
    for c in &sc.coeffs[..=n] {
        sum += Scalar::from_integer(c.clone()) * &pow;
        pow *= s;
    }
    let ratio = Pow::pow(int(k as i64), k as u32) * s.abs();
    let radius_warning = ratio >= Scalar::one();
    let tail_bound = if radius_warning {
        f64::INFINITY
    } else {
        let t =
            Scalar::from_integer(sc.coeffs[n + 1].clone()) * pow.abs() / (Scalar::one() - ratio);
        upper_f64(&t)
    };
    Ok(I0Evaluation {
        value: sum.to_f64().unwrap_or(f64::NAN),
        partial_sum: Some(sum),
        tail_bound,
        terms: n + 1,
        radius_warning,
    })
}

/// Floating-point variant of [`evaluate_i0`].
pub fn evaluate_i0_f64(k: usize, s: f64, n: usize) -> Result<I0Evaluation> {
    let sc = series_coefficients(k, n + 1)?;
    let mut sum = 0.0;
    let mut pow = 1.0;
    for c in &sc.coeffs[..=n] {
        sum += c.to_f64().unwrap_or(f64::INFINITY) * pow;
        pow *= s;
    }
    let ratio = libm::pow(k as f64, k as f64) * s.abs();
    let radius_warning = ratio >= 1.0;
    let tail_bound = if radius_warning {
        f64::INFINITY
    } else {
        let c = sc.coeffs[n + 1].to_f64().unwrap_or(f64::INFINITY);
        // summation error of n+1 terms added to the analytic tail
        let rounding = (n as f64 + 2.0) * f64::EPSILON * libm::fabs(sum).max(1.0);
        c * pow.abs() / (1.0 - ratio) * (1.0 + 1e-12) + rounding
    };
    Ok(I0Evaluation {
        partial_sum: None,
        value: sum,
        tail_bound,
        terms: n + 1,
        radius_warning,
    })
}

/// Polynomial in `theta`, ascending coefficients.
type ThetaPoly = Vec<Scalar>;

fn poly_mul(a: &ThetaPoly, b: &ThetaPoly) -> ThetaPoly {
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `p(theta) -> p(-theta)`.
fn poly_reflect(p: &ThetaPoly) -> ThetaPoly {
    p.iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
        .collect()
}

fn product_of_shifts(k: usize, sign: i64) -> ThetaPoly {
    let kk = int(k as i64);
    (1..=k as i64).fold(vec![Scalar::one()], |acc, l| {
        poly_mul(&acc, &vec![int(sign * l) / &kk, Scalar::one()])
    })
}

/// An operator `P0(theta) + x P1(theta)` in a coordinate `x` with `theta = x d/dx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuchsOperator {
    pub p0: ThetaPoly,
    pub p1: ThetaPoly,
}

/// The `s`-plane operator: `P0 = theta^k`, `P1 = -k^k prod (theta + l/k)`.
pub fn s_operator(k: usize) -> FuchsOperator {
    let mut p0 = vec![Scalar::zero(); k + 1];
    p0[k] = Scalar::one();
    let kk = Pow::pow(int(k as i64), k as u32);
    let p1 = product_of_shifts(k, 1)
        .into_iter()
        .map(|c| -c * &kk)
        .collect();
    FuchsOperator { p0, p1 }
}

/// The `zeta`-plane operator: `P0 = -prod (theta - l/k)`, `P1 = theta^k`.
pub fn zeta_operator(k: usize) -> FuchsOperator {
    let mut p1 = vec![Scalar::zero(); k + 1];
    p1[k] = Scalar::one();
    let p0 = product_of_shifts(k, -1).into_iter().map(|c| -c).collect();
    FuchsOperator { p0, p1 }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaSubstitution {
    /// The `s`-operator rewritten in `zeta = 1/(k^k s)` and multiplied by `zeta`.
    pub transformed: FuchsOperator,
    /// `transformed = factor * zeta_operator`, if such a factor exists.
    pub factor: Option<Scalar>,
}

/// `theta_s = -theta_zeta` and `s = 1/(k^k zeta)`, so
/// `zeta (P0(theta_s) + s P1(theta_s)) = P1(-theta)/k^k + zeta P0(-theta)`.
pub fn zeta_substitution(k: usize) -> Result<ZetaSubstitution> {
    check_rank(k)?;
    let s = s_operator(k);
    let kk = Pow::pow(int(k as i64), k as u32);
    let transformed = FuchsOperator {
        p0: poly_reflect(&s.p1).into_iter().map(|c| c / &kk).collect(),
        p1: poly_reflect(&s.p0),
    };
    let target = zeta_operator(k);
    let lead = &target.p1[k];
    let factor = &transformed.p1[k] / lead;
    let scaled = |p: &ThetaPoly| p.iter().map(|c| c * &factor).collect::<ThetaPoly>();
    let ok = transformed.p0 == scaled(&target.p0) && transformed.p1 == scaled(&target.p1);
    Ok(ZetaSubstitution {
        transformed,
        factor: ok.then_some(factor),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn central_binomials() {
        assert_eq!(
            series_coefficients(2, 4).unwrap().coeffs,
            big(&[1, 2, 6, 20, 70])
        );
        assert_eq!(series_coefficients(3, 1).unwrap().coeffs, big(&[1, 6]));
        assert_eq!(series_coefficients(5, 0).unwrap().coeffs, big(&[1]));
        assert_eq!(closed_form_coefficient(3, 2), BigInt::from(90));
    }

    #[test]
    fn residual_vanishes() {
        let sc = series_coefficients(2, 4).unwrap();
        assert!(apply_hg_operator(&sc).is_zero());
        let sc = series_coefficients(5, 20).unwrap();
        let r = apply_hg_operator(&sc);
        assert!(r.is_zero());
        assert!(!r.truncation_term.is_zero());
    }

    #[test]
    fn corrupted_coefficient_detected() {
        let mut sc = series_coefficients(2, 4).unwrap();
        sc.coeffs[2] += 1;
        assert_eq!(apply_hg_operator(&sc).first_nonzero(), Some(2));
    }

    #[test]
    fn sqrt_two_oracle() {
        // sum C(2m, m) x^m = 1/sqrt(1 - 4x)
        let ev = evaluate_i0(2, &frac(1, 8), 30).unwrap();
        assert!(!ev.radius_warning);
        assert!((ev.value - core::f64::consts::SQRT_2).abs() <= ev.tail_bound);
        assert!(ev.tail_bound < 1e-9);
        let evf = evaluate_i0_f64(2, 0.125, 30).unwrap();
        assert!((evf.value - core::f64::consts::SQRT_2).abs() <= evf.tail_bound);
    }

    #[test]
    fn origin_and_boundary() {
        let ev = evaluate_i0(4, &int(0), 5).unwrap();
        assert_eq!(ev.partial_sum, Some(int(1)));
        let ev = evaluate_i0(3, &frac(1, 27), 10).unwrap();
        assert!(ev.radius_warning);
        assert!(ev.tail_bound.is_infinite());
    }

    #[test]
    fn zeta_substitution_recovers_hypergeometric_operator() {
        for k in 2..=8usize {
            let z = zeta_substitution(k).unwrap();
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            assert_eq!(z.factor, Some(sign), "k={k}");
        }
    }
}
