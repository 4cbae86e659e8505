//! Monomial change of variables `Log T = L Log Xi` and the Gamma-factor exponents of the
//! Mellin transform.
//!
//! Coordinates are ordered `(x_0, ..., x_{k-1}, s, y_1, y_2)`; the symbols of an exponent
//! form are `(i_0, ..., i_{k-1}, z, v_1, v_2)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, Matrix, Scalar};
use crate::levelt::check_rank;

/// `constant + sum a_l i_l + b z + c1 v_1 + c2 v_2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineForm {
    pub constant: Scalar,
    pub i: Vec<Scalar>,
    pub z: Scalar,
    pub v1: Scalar,
    pub v2: Scalar,
}

impl AffineForm {
    pub fn zero(k: usize) -> Self {
        AffineForm {
            constant: Scalar::zero(),
            i: vec![Scalar::zero(); k],
            z: Scalar::zero(),
            v1: Scalar::zero(),
            v2: Scalar::zero(),
        }
    }

    pub fn k(&self) -> usize {
        self.i.len()
    }

    fn symbol(k: usize, pos: usize) -> Self {
        let mut f = Self::zero(k);
        match pos {
            p if p < k => f.i[p] = Scalar::one(),
            p if p == k => f.z = Scalar::one(),
            p if p == k + 1 => f.v1 = Scalar::one(),
            _ => f.v2 = Scalar::one(),
        }
        f
    }

    pub fn add_scaled(&mut self, other: &AffineForm, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        self.constant += &other.constant * c;
        for (a, b) in self.i.iter_mut().zip(&other.i) {
            *a += b * c;
        }
        self.z += &other.z * c;
        self.v1 += &other.v1 * c;
        self.v2 += &other.v2 * c;
    }

    /// Substitutes `i = 0`, `v_1 = v_2 = 1`, leaving a form in `z` alone.
    pub fn specialize_unit(&self) -> AffineForm {
        let mut f = Self::zero(self.k());
        f.constant = &self.constant + &self.v1 + &self.v2;
        f.z = self.z.clone();
        f
    }
}

fn write_term(out: &mut String, c: &Scalar, name: &str) {
    if c.is_zero() {
        return;
    }
    let neg = c.is_negative();
    let a = c.abs();
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if name.is_empty() {
        out.push_str(&format!("{a}"));
    } else if a.is_one() {
        out.push_str(name);
    } else {
        out.push_str(&format!("{a}*{name}"));
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_term(&mut s, &self.z, "z");
        for (l, c) in self.i.iter().enumerate() {
            write_term(&mut s, c, &format!("i_{l}"));
        }
        write_term(&mut s, &self.v1, "v_1");
        write_term(&mut s, &self.v2, "v_2");
        write_term(&mut s, &self.constant, "");
        if s.is_empty() {
            s.push('0');
        }
        f.write_str(&s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyMatrix {
    pub k: usize,
    pub l: Matrix,
    pub l_inv: Matrix,
}

fn unit(b: bool) -> Scalar {
    if b {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

/// Rows `T_0..T_{k+2}` as exponent vectors over `(x, s, y_1, y_2)`:
/// `T_i = x_i y_1`, `T_k = y_1`, `T_{k+1} = x_0 ... x_{k-1} y_2`, `T_{k+2} = s y_2`.
pub fn printed_l(k: usize) -> Matrix {
    let n = k + 3;
    Matrix::from_fn(n, n, |r, c| match r {
        r if r < k => unit(c == r || c == k + 1),
        r if r == k => unit(c == k + 1),
        r if r == k + 1 => unit(c < k || c == k + 2),
        _ => unit(c == k || c == k + 2),
    })
}

pub fn printed_l_inv(k: usize) -> Matrix {
    let n = k + 3;
    let kk = int(k as i64);
    Matrix::from_fn(n, n, |r, c| match r {
        r if r < k => {
            if c == r {
                int(1)
            } else if c == k {
                int(-1)
            } else {
                Scalar::zero()
            }
        }
        r if r == k => match c {
            c if c < k => int(1),
            c if c == k => -kk.clone(),
            c if c == k + 1 => int(-1),
            _ => int(1),
        },
        r if r == k + 1 => unit(c == k),
        _ => match c {
            c if c < k => int(-1),
            c if c == k => kk.clone(),
            c if c == k + 1 => int(1),
            _ => Scalar::zero(),
        },
    })
}

/// Builds `L`, inverts it exactly and checks the inverse against the printed pattern.
pub fn cayley_l(k: usize) -> Result<CayleyMatrix> {
    check_rank(k)?;
    let l = printed_l(k);
    let l_inv = l.inverse()?;
    if l_inv != printed_l_inv(k) {
        return Err(Error::Inconsistent(
            "inverse of L differs from the printed pattern",
        ));
    }
    Ok(CayleyMatrix { k, l, l_inv })
}

/// Closed forms `z + i_l + 1 - v_2` (l < k), `-sum (i_l + 1) + v_1 + k (v_2 - z)`,
/// `-z + v_2`, `z`.
pub fn closed_form_exponents(k: usize) -> Vec<AffineForm> {
    let kk = int(k as i64);
    let mut out = Vec::with_capacity(k + 3);
    for l in 0..k {
        let mut f = AffineForm::zero(k);
        f.z = int(1);
        f.i[l] = int(1);
        f.constant = int(1);
        f.v2 = int(-1);
        out.push(f);
    }
    let mut f = AffineForm::zero(k);
    f.i = vec![int(-1); k];
    f.constant = -kk.clone();
    f.v1 = int(1);
    f.v2 = kk.clone();
    f.z = -kk;
    out.push(f);
    let mut f = AffineForm::zero(k);
    f.z = int(-1);
    f.v2 = int(1);
    out.push(f);
    let mut f = AffineForm::zero(k);
    f.z = int(1);
    out.push(f);
    out
}

/// `(i_0 + 1, ..., i_{k-1} + 1, z, v_1, v_2) L^{-1}`, checked against the closed forms.
pub fn mellin_exponents(k: usize) -> Result<Vec<AffineForm>> {
    let cm = cayley_l(k)?;
    let n = k + 3;
    let input: Vec<AffineForm> = (0..n)
        .map(|p| {
            let mut f = AffineForm::symbol(k, p);
            if p < k {
                f.constant = int(1);
            }
            f
        })
        .collect();
    let forms: Vec<AffineForm> = (0..n)
        .map(|c| {
            let mut acc = AffineForm::zero(k);
            for (r, w) in input.iter().enumerate() {
                acc.add_scaled(w, cm.l_inv.get(r, c));
            }
            acc
        })
        .collect();
    if forms != closed_form_exponents(k) {
        return Err(Error::Inconsistent(
            "exponent forms differ from the closed forms",
        ));
    }
    Ok(forms)
}
