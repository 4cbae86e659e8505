//! Monodromy generators of the pulled-back equation under `zeta = lambda^k`.
//!
//! With `omega = exp(2 pi i / k)`:
//! `M_1 = h1`, `M_{omega^i} = h_inf^{-i} h1 h_inf^i`, `M_inf = h_inf^k`, `M_0 = h0^k`,
//! and `M_inf M_{omega^{k-1}} ... M_omega M_1 = M_0^{-1}`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::exact::Matrix;
use crate::levelt::{cp_levelt, twisted_cp_levelt, LeveltTriple};

/// Singular point a generator loops around.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Singularity {
    Zero,
    /// `omega^i` with `omega = exp(2 pi i / k)`; `Omega(0)` is the point 1.
    Omega(usize),
    Infinity,
}

impl fmt::Display for Singularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Singularity::Zero => write!(f, "0"),
            Singularity::Omega(0) => write!(f, "1"),
            Singularity::Omega(1) => write!(f, "omega"),
            Singularity::Omega(i) => write!(f, "omega^{i}"),
            Singularity::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub k: usize,
    pub m0: Matrix,
    pub m1: Matrix,
    /// `M_{omega^i}` for `i = 1..k-1`.
    pub m_omega: Vec<Matrix>,
    pub m_inf: Matrix,
}

impl GroupPresentation {
    /// Generators in Riemann–Fuchs order, rightmost factor first:
    /// `M_1, M_omega, ..., M_{omega^{k-1}}, M_inf`.
    pub fn generators(&self) -> Vec<(Singularity, &Matrix)> {
        let mut out = Vec::with_capacity(self.k + 1);
        out.push((Singularity::Omega(0), &self.m1));
        out.extend(
            self.m_omega
                .iter()
                .enumerate()
                .map(|(i, m)| (Singularity::Omega(i + 1), m)),
        );
        out.push((Singularity::Infinity, &self.m_inf));
        out
    }

    pub fn generator_matrices(&self) -> Vec<Matrix> {
        self.generators()
            .into_iter()
            .map(|(_, m)| m.clone())
            .collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.generators()
            .iter()
            .map(|(s, _)| format!("M_{s}"))
            .collect()
    }
}

pub fn kummer_generators(t: &LeveltTriple) -> Result<GroupPresentation> {
    let k = t.k();
    let hinf_inv = t.hinf.inverse()?;
    let mut m_omega = Vec::with_capacity(k - 1);
    let (mut left, mut right) = (hinf_inv.clone(), t.hinf.clone());
    for _ in 1..k {
        m_omega.push(&(&left * &t.h1) * &right);
        left = &left * &hinf_inv;
        right = &right * &t.hinf;
    }
    Ok(GroupPresentation {
        k,
        m0: t.h0.pow(k as i64)?,
        m1: t.h1.clone(),
        m_omega,
        m_inf: t.hinf.pow(k as i64)?,
    })
}

/// Generators for projective space; `M_0` is checked to be the identity.
pub fn cp_generators(k: usize) -> Result<GroupPresentation> {
    let g = kummer_generators(&cp_levelt(k)?)?;
    if !g.m0.is_identity() {
        return Err(Error::Inconsistent("h0^k is not the identity"));
    }
    Ok(g)
}

/// Generators built from the sign-twisted Levelt pair; here `M_0 = -id`.
pub fn twisted_cp_generators(k: usize) -> Result<GroupPresentation> {
    let g = kummer_generators(&twisted_cp_levelt(k)?)?;
    if g.m0 != -&Matrix::identity(k) {
        return Err(Error::Inconsistent(
            "twisted h0^k is not minus the identity",
        ));
    }
    Ok(g)
}

/// Which Levelt pair a group is built from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `det(t - h0) = t^k - 1`, the local monodromy of the quantum differential equation.
    #[default]
    Literal,
    /// `det(t - h0) = t^k + 1`; its quadratic invariant is the Gram matrix of the Stokes data.
    Twisted,
}

impl Variant {
    pub fn levelt(self, k: usize) -> Result<LeveltTriple> {
        match self {
            Variant::Literal => cp_levelt(k),
            Variant::Twisted => twisted_cp_levelt(k),
        }
    }

    pub fn generators(self, k: usize) -> Result<GroupPresentation> {
        match self {
            Variant::Literal => cp_generators(k),
            Variant::Twisted => twisted_cp_generators(k),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Literal => "literal",
            Variant::Twisted => "twisted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiemannFuchsReport {
    /// `M_inf M_{omega^{k-1}} ... M_omega M_1`.
    pub product: Matrix,
    pub is_identity: bool,
    /// First entry (row-major) where the product differs from the identity.
    pub first_mismatch: Option<(usize, usize)>,
    /// Whether the product equals `M_0^{-1}`; coincides with `is_identity` when `M_0 = id`.
    pub equals_m0_inverse: bool,
}

pub fn verify_riemann_fuchs(g: &GroupPresentation) -> Result<RiemannFuchsReport> {
    let mut product = Matrix::identity(g.k);
    for (_, m) in g.generators() {
        product = m.checked_mul(&product)?;
    }
    let first_mismatch = product.first_difference(&Matrix::identity(g.k));
    let equals_m0_inverse = product.checked_mul(&g.m0)?.is_identity();
    Ok(RiemannFuchsReport {
        is_identity: first_mismatch.is_none(),
        first_mismatch,
        equals_m0_inverse,
        product,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PseudoReflection {
    /// `rank(id - M) = 1`.
    pub is_pseudo_reflection: bool,
    /// Additionally `M^2 = id`.
    pub is_reflection: bool,
}

pub fn is_pseudo_reflection(m: &Matrix) -> Result<PseudoReflection> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let pr = (&Matrix::identity(m.rows()) - m).rank() == 1;
    Ok(PseudoReflection {
        is_pseudo_reflection: pr,
        is_reflection: pr && (m * m).is_identity(),
    })
}
