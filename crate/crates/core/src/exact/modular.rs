//! Kernel computation modulo a Mersenne prime with rational reconstruction.
//!
//! The candidate basis is checked exactly against the integer-scaled rows before it is
//! returned, so a wrong reconstruction only costs the fallback to exact elimination.
//! Rank modulo p never exceeds the rank over Q; together with the exact check this pins
//! the kernel dimension.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{elim, Matrix, Scalar};

const P: u64 = (1 << 61) - 1;

#[inline]
fn reduce(x: u128) -> u64 {
    let s = (x & P as u128) as u64 + (x >> 61) as u64;
    let s = (s & P) + (s >> 61);
    if s >= P {
        s - P
    } else {
        s
    }
}

#[inline]
fn mul(a: u64, b: u64) -> u64 {
    reduce(a as u128 * b as u128)
}

#[inline]
fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    acc
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

fn to_mod(x: &BigInt) -> u64 {
    let r = x.mod_floor(&BigInt::from(P));
    let (_, digits) = r.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

/// Smallest `n/d` with `n ≡ a d (mod P)` and `|n|, d ≤ sqrt(P/2)`.
fn reconstruct(a: u64) -> Option<Scalar> {
    if a == 0 {
        return Some(Scalar::zero());
    }
    let bound: i128 = 1_073_741_823; // floor(sqrt((2^61 - 1) / 2))
    let (mut r0, mut r1) = (P as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    if n.gcd(&d) != 1 {
        return None;
    }
    Some(Scalar::new(BigInt::from(n), BigInt::from(d)))
}

/// Each row multiplied by the lcm of its denominators.
fn integer_rows(m: &Matrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter().map(|v| v.numer() * (&l / v.denom())).collect()
        })
        .collect()
}

fn rref_mod(rows: &mut Vec<Vec<u64>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let iv = inv(rows[r][c]);
        for v in rows[r][c..].iter_mut() {
            *v = mul(*v, iv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            let f = row[c];
            if i == r || f == 0 {
                continue;
            }
            for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if y != 0 {
                    *x = sub(*x, mul(f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub(super) fn kernel_basis(m: &Matrix) -> Option<Vec<Vec<Scalar>>> {
    let int_rows = integer_rows(m);
    let mut rows: Vec<Vec<u64>> = int_rows
        .iter()
        .map(|r| r.iter().map(to_mod).collect())
        .collect();
    let pivots = rref_mod(&mut rows, m.cols());

    let mut table = vec![vec![Scalar::zero(); m.cols()]; pivots.len()];
    for (i, row) in rows.iter().enumerate() {
        for (f, &v) in row.iter().enumerate() {
            table[i][f] = reconstruct(v)?;
        }
    }
    let basis = elim::basis_from_rref(m.cols(), &pivots, |i, f| table[i][f].clone());

    for v in &basis {
        let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let w: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
        for row in &int_rows {
            let dot = row
                .iter()
                .zip(&w)
                .filter(|(a, b)| a.sign() != Sign::NoSign && b.sign() != Sign::NoSign)
                .fold(BigInt::zero(), |acc, (a, b)| acc + a * b);
            if !dot.is_zero() {
                return None;
            }
        }
    }
    debug_assert!(basis
        .iter()
        .all(|v| v.iter().all(|x| !x.denom().is_negative())));
    Some(basis)
}
