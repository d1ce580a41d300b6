//! Truncated formal power series in `q` with exact rational coefficients.
//!
//! A `QSeries` of precision `N` stores the coefficients of `q^0 .. q^N` and
//! nothing else; every operation tracks precision explicitly. Mixing two
//! precisions yields the minimum of the two, so a computed coefficient is
//! always exact: it is never silently contaminated by truncated terms.

use num::{One, Zero};

use crate::poly::Poly;
use crate::rational::{binomial, Rational};

/// Truncated power series `a_0 + a_1 q + ... + a_N q^N`.
///
/// Invariant: `coeffs.len() == precision + 1`, even when high coefficients
/// vanish. Equality compares both precision and coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    /// The zero series at the given precision.
    pub fn zero(precision: usize) -> Self {
        QSeries {
            coeffs: vec![Rational::zero(); precision + 1],
        }
    }

    /// The constant series `1` at the given precision.
    pub fn one(precision: usize) -> Self {
        let mut s = QSeries::zero(precision);
        s.coeffs[0] = Rational::one();
        s
    }

    /// Builds a series from `a_0 ..= a_N`; the precision is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least a_0");
        QSeries { coeffs }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^n`; `n` must not exceed the precision.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Drops coefficients above `m`. Requires `m <= self.precision()`.
    pub fn truncate(&self, m: usize) -> QSeries {
        assert!(m <= self.precision(), "cannot truncate to a higher precision");
        QSeries {
            coeffs: self.coeffs[..=m].to_vec(),
        }
    }

    pub fn scale(&self, c: &Rational) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// The operator `q · d/dq`: the coefficient of `q^n` becomes `n · a_n`.
    pub fn q_derive(&self) -> QSeries {
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, a)| a * Rational::from_integer(n.into()))
                .collect(),
        }
    }

    /// `self += c · other`, over the common range. Precisions must agree;
    /// the callers that accumulate linear combinations keep everything at one
    /// precision and this assert documents that.
    pub fn add_scaled_assign(&mut self, c: &Rational, other: &QSeries) {
        assert_eq!(self.precision(), other.precision(), "precision mismatch");
        if c.is_zero() {
            return;
        }
        for (a, b) in self.coeffs.iter_mut().zip(other.coeffs.iter()) {
            if !b.is_zero() {
                *a += b * c;
            }
        }
    }

    /// First exponent `n` with `a_n != 0`, if any.
    pub fn lowest_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// True when the two series agree on every coefficient `0 ..= upto`.
    pub fn agrees_with(&self, other: &QSeries, upto: usize) -> bool {
        assert!(upto <= self.precision() && upto <= other.precision());
        self.coeffs[..=upto] == other.coeffs[..=upto]
    }
}

impl std::ops::Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let n = self.precision().min(rhs.precision());
        let mut coeffs = Vec::with_capacity(n + 1);
        for i in 0..=n {
            coeffs.push(&self.coeffs[i] + &rhs.coeffs[i]);
        }
        QSeries { coeffs }
    }
}

impl std::ops::Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        let n = self.precision().min(rhs.precision());
        let mut coeffs = Vec::with_capacity(n + 1);
        for i in 0..=n {
            coeffs.push(&self.coeffs[i] - &rhs.coeffs[i]);
        }
        QSeries { coeffs }
    }
}

impl std::ops::Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let n = self.precision().min(rhs.precision());
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        QSeries { coeffs }
    }
}

/// Expansion of `1 / (1 - q^n)^s` to the given precision:
/// the coefficient of `q^{n m}` is `C(m + s - 1, s - 1)`.
pub fn geometric_pow(n: u32, s: u32, precision: usize) -> QSeries {
    assert!(n >= 1, "geometric_pow needs n >= 1");
    assert!(s >= 1, "geometric_pow needs s >= 1");
    let mut out = QSeries::zero(precision);
    let mut m = 0u64;
    loop {
        let exp = (n as u64) * m;
        if exp > precision as u64 {
            break;
        }
        out.coeffs[exp as usize] = Rational::from_integer(binomial(m + s as u64 - 1, s as u64 - 1));
        m += 1;
    }
    out
}

/// `P(q^n)` truncated to the given precision.
pub fn poly_eval_at_qpow(p: &Poly, n: u32, precision: usize) -> QSeries {
    assert!(n >= 1, "poly_eval_at_qpow needs n >= 1");
    let mut out = QSeries::zero(precision);
    for (i, c) in p.coeffs().iter().enumerate() {
        let exp = (n as u64) * (i as u64);
        if exp > precision as u64 {
            break;
        }
        if !c.is_zero() {
            out.coeffs[exp as usize] = c.clone();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn ints(v: &[i64]) -> QSeries {
        QSeries::from_coeffs(v.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn construction_and_precision() {
        let s = QSeries::one(3);
        assert_eq!(s.precision(), 3);
        assert_eq!(s.coeffs(), &[rat_int(1), rat_int(0), rat_int(0), rat_int(0)]);
        assert_eq!(QSeries::zero(0).precision(), 0);
    }

    #[test]
    fn min_precision_rule() {
        let a = QSeries::one(10);
        let b = ints(&[1, 2, 3]);
        assert_eq!((&a + &b).precision(), 2);
        assert_eq!((&a * &b).precision(), 2);
        assert_eq!((&a - &b).precision(), 2);
    }

    #[test]
    fn multiplication_is_truncated_convolution() {
        // (1 + q)^2 = 1 + 2q + q^2
        let a = ints(&[1, 1, 0]);
        assert_eq!(&a * &a, ints(&[1, 2, 1]));
        // geometric series squared: 1/(1-q)^2 = sum (m+1) q^m
        let g = geometric_pow(1, 1, 6);
        let g2 = &g * &g;
        assert_eq!(g2, geometric_pow(1, 2, 6));
    }

    #[test]
    fn geometric_pow_examples() {
        assert_eq!(geometric_pow(2, 1, 5), ints(&[1, 0, 1, 0, 1, 0]));
        assert_eq!(geometric_pow(1, 2, 4), ints(&[1, 2, 3, 4, 5]));
        assert_eq!(geometric_pow(2, 3, 6), ints(&[1, 0, 3, 0, 6, 0, 10]));
    }

    #[test]
    fn poly_eval_examples() {
        let p = Poly::from_ints(&[0, 1, 1]); // t + t^2
        assert_eq!(poly_eval_at_qpow(&p, 2, 6), ints(&[0, 0, 1, 0, 1, 0, 0]));
        let c = Poly::from_coeffs(vec![rat(1, 2)]);
        assert_eq!(poly_eval_at_qpow(&c, 3, 2), QSeries::from_coeffs(vec![rat(1, 2), rat_int(0), rat_int(0)]));
    }

    #[test]
    fn q_derive_examples() {
        let s = ints(&[5, 1, 3, 4]);
        assert_eq!(s.q_derive(), ints(&[0, 1, 6, 12]));
    }

    #[test]
    fn truncate_and_lowest_order() {
        let s = ints(&[0, 0, 7, 1]);
        assert_eq!(s.truncate(2), ints(&[0, 0, 7]));
        assert_eq!(s.lowest_order(), Some(2));
        assert_eq!(QSeries::zero(4).lowest_order(), None);
    }
}
