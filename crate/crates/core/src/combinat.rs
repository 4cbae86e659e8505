//! Binomials and factorials as big integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::Scalar;

/// `C(n, r)`, zero when `r > n`.
pub fn binomial(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, r)` for a possibly negative lower index; zero outside `0..=n`.
pub fn binomial_signed(n: u64, r: i64) -> BigInt {
    if r < 0 {
        BigInt::zero()
    } else {
        binomial(n, r as u64)
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `(-1)^e` as a big integer.
pub fn sign_pow(e: i64) -> BigInt {
    if e.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `(-1)^e * C(n, r)` as an exact scalar.
pub fn signed_binomial(e: i64, n: u64, r: i64) -> Scalar {
    Scalar::from_integer(sign_pow(e) * binomial_signed(n, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(10, 0), BigInt::from(1));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(
            binomial(62, 31),
            "465428353255261088".parse::<BigInt>().unwrap()
        );
        assert_eq!(binomial_signed(4, -1), BigInt::from(0));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(6), BigInt::from(720));
    }
}
