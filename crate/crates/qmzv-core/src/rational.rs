//! Exact rational scalars.
//!
//! All coefficient arithmetic in this crate is carried out over arbitrary
//! precision rationals. `num::BigRational` already maintains the invariants we
//! rely on everywhere (always fully reduced, denominator strictly positive),
//! so it is used directly; this module adds the handful of constructors and
//! combinatorial helpers the rest of the crate needs.

use num::bigint::ToBigInt;
use num::{BigInt, BigRational, One, Zero};

pub type Rational = BigRational;

/// `p/q` as an exact rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    assert!(q != 0, "rational with zero denominator");
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// The integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Binomial coefficient `C(n, k)` with the convention `C(n, k) = 0` for `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Binomial coefficient as a rational, convenient in coefficient formulas.
pub fn binomial_rat(n: u64, k: u64) -> Rational {
    Rational::from_integer(binomial(n, k))
}

/// `b^e` for a big integer base and machine exponent.
pub fn bigint_pow(base: u64, exp: u32) -> BigInt {
    base.to_bigint().unwrap().pow(exp)
}
