//! The polynomial families that parametrise the q-series sums, plus the
//! Eulerian polynomials and Bernoulli numbers they are built from.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{factorial, Rational};

/// Eulerian polynomial `P_m(t)`, normalised so that
/// `t · P_m(t) / (1-t)^{m+1} = Σ_{d≥1} d^m t^d`.
///
/// Computed straight from the defining identity: the truncated power sum
/// `Σ_{d=1}^{m+2} d^m t^d` is multiplied by `(1-t)^{m+1}`; degrees up to
/// `m+2` of that product are exact, they must spell out `t · P_m(t)`
/// (degree ≤ m+1), and the self-checks below confirm it did.
pub fn eulerian_poly(m: u32) -> Poly {
    let d_max = m as usize + 2;
    let mut power_sum = vec![Rational::zero(); d_max + 1];
    for (d, c) in power_sum.iter_mut().enumerate().skip(1) {
        *c = Rational::from_integer(crate::rational::bigint_pow(d as u64, m));
    }
    let product = &Poly::from_coeffs(power_sum) * &Poly::one_minus_t_pow(m + 1);
    let t_pm = Poly::from_coeffs(product.coeffs().iter().take(d_max + 1).cloned().collect());
    assert!(
        t_pm.degree() <= (m as i64).max(1) && t_pm.coeff(0).is_zero(),
        "generating identity did not truncate to a polynomial t·P_m"
    );
    let p = t_pm.shift_down(1);
    assert_eq!(
        p.eval(&Rational::one()),
        Rational::from_integer(factorial(m as u64)),
        "Eulerian polynomial failed the P_m(1) = m! check"
    );
    assert!(
        p.coeffs().iter().eq(p.coeffs().iter().rev()),
        "Eulerian coefficients must be palindromic"
    );
    p
}

/// Bernoulli numbers `B_0 ..= B_n` with the convention `B_1 = -1/2`,
/// from the recurrence `Σ_{i=0}^{n} C(n+1, i) B_i = 0` for `n ≥ 1`.
pub fn bernoulli_upto(n: u32) -> Vec<Rational> {
    let mut b = Vec::with_capacity(n as usize + 1);
    b.push(Rational::one());
    for m in 1..=n as u64 {
        let mut acc = Rational::zero();
        for (i, bi) in b.iter().enumerate() {
            acc += bi * Rational::from_integer(crate::rational::binomial(m + 1, i as u64));
        }
        b.push(-acc / Rational::from_integer((m + 1).into()));
    }
    b
}

/// Single Bernoulli number `B_n` (convention `B_1 = -1/2`).
pub fn bernoulli(n: u32) -> Rational {
    bernoulli_upto(n).pop().unwrap()
}

/// Identifies which family a linear combination is written over. This is the
/// lightweight tag carried by indices-with-coefficients; the corresponding
/// [`PolyFamily`] holds the actual polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    /// `Q_s(t) = t · P_{s-1}(t) / (s-1)!`, entries `s ≥ 1`; written `[s_1, ..., s_l]`.
    Eulerian,
    /// `Q_s(t) = t^{s/2}` for even `s`, `t^{(s-1)/2}(1+t)` for odd `s`,
    /// entries `s ≥ 2`; written `Z(s_1, ..., s_l)`.
    Okounkov,
    /// `Q_s(t) = t^{s-1}`, entries `s ≥ 2`; written `T(s_1, ..., s_l)`.
    Monomial,
    /// A user-supplied family, identified by name.
    Custom(String),
}

impl Basis {
    pub fn name(&self) -> &str {
        match self {
            Basis::Eulerian => "eulerian",
            Basis::Okounkov => "okounkov",
            Basis::Monomial => "monomial",
            Basis::Custom(name) => name,
        }
    }

    /// How an index in this basis is printed: `(prefix, open, close)`.
    pub fn delimiters(&self) -> (&str, &str, &str) {
        match self {
            Basis::Eulerian => ("", "[", "]"),
            Basis::Okounkov => ("Z", "(", ")"),
            Basis::Monomial => ("T", "(", ")"),
            Basis::Custom(_) => ("Q", "(", ")"),
        }
    }

    pub fn parse(name: &str) -> Result<Basis> {
        match name {
            "eulerian" => Ok(Basis::Eulerian),
            "okounkov" => Ok(Basis::Okounkov),
            "monomial" => Ok(Basis::Monomial),
            _ => Err(Error::UnknownBasis {
                name: name.to_string(),
            }),
        }
    }
}

impl std::fmt::Display for Basis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A family `s ↦ Q_s(t)` of numerator polynomials. Every polynomial obeys
/// `Q_s(0) = 0` and `deg Q_s ≤ s`, which keeps each summand
/// `Q_s(q^n) / (1-q^n)^s` a well-defined power series whose lowest term is a
/// positive power of `q^n`.
#[derive(Clone, Debug)]
pub struct PolyFamily {
    basis: Basis,
    min_entry: u32,
    custom: Option<BTreeMap<u32, Poly>>,
}

impl PolyFamily {
    /// `Q_s(t) = t · P_{s-1}(t) / (s-1)!` for `s ≥ 1`.
    pub fn eulerian() -> Self {
        PolyFamily {
            basis: Basis::Eulerian,
            min_entry: 1,
            custom: None,
        }
    }

    /// `Q_s(t) = t^{s/2}` (even `s`), `t^{(s-1)/2}(1+t)` (odd `s`), for `s ≥ 2`.
    /// Entry `1` would need `Q_1(t) = 1 + t`, whose constant term makes the
    /// sum diverge, so it is excluded.
    pub fn okounkov() -> Self {
        PolyFamily {
            basis: Basis::Okounkov,
            min_entry: 2,
            custom: None,
        }
    }

    /// `Q_s(t) = t^{s-1}` for `s ≥ 2`. Entry `1` would be the constant `1`,
    /// again divergent, so it is excluded.
    pub fn monomial() -> Self {
        PolyFamily {
            basis: Basis::Monomial,
            min_entry: 2,
            custom: None,
        }
    }

    /// A user-supplied family. Every entry is validated against the standing
    /// hypotheses `Q_s(0) = 0` and `Q_s(1) ≠ 0`.
    pub fn custom(name: impl Into<String>, polys: BTreeMap<u32, Poly>) -> Result<Self> {
        let name = name.into();
        let mut min_entry = u32::MAX;
        for (&s, p) in &polys {
            if s == 0 {
                return Err(Error::OutOfRange {
                    what: "custom family entries start at 1".to_string(),
                });
            }
            if !p.coeff(0).is_zero() {
                return Err(Error::NonzeroConstantTerm { entry: s });
            }
            if p.eval(&Rational::one()).is_zero() {
                return Err(Error::VanishesAtOne { entry: s });
            }
            min_entry = min_entry.min(s);
        }
        if polys.is_empty() {
            return Err(Error::OutOfRange {
                what: "custom family needs at least one entry".to_string(),
            });
        }
        Ok(PolyFamily {
            basis: Basis::Custom(name),
            min_entry,
            custom: Some(polys),
        })
    }

    /// The family for a named built-in basis.
    pub fn for_basis(basis: &Basis) -> Result<Self> {
        match basis {
            Basis::Eulerian => Ok(PolyFamily::eulerian()),
            Basis::Okounkov => Ok(PolyFamily::okounkov()),
            Basis::Monomial => Ok(PolyFamily::monomial()),
            Basis::Custom(name) => Err(Error::UnknownBasis { name: name.clone() }),
        }
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn name(&self) -> &str {
        self.basis.name()
    }

    /// Smallest supported entry.
    pub fn min_entry(&self) -> u32 {
        self.min_entry
    }

    pub fn supports(&self, s: u32) -> bool {
        match &self.custom {
            Some(map) => map.contains_key(&s),
            None => s >= self.min_entry,
        }
    }

    /// The numerator polynomial `Q_s(t)`, or an error naming the offending
    /// slot when the entry is unsupported.
    pub fn poly_at(&self, s: u32, slot: usize) -> Result<Poly> {
        if !self.supports(s) {
            return Err(Error::UnsupportedIndex {
                family: self.name().to_string(),
                entry: s,
                slot,
            });
        }
        Ok(match (&self.basis, &self.custom) {
            (_, Some(map)) => map[&s].clone(),
            (Basis::Eulerian, None) => eulerian_poly(s - 1)
                .shift_up(1)
                .scale(&(Rational::one() / Rational::from_integer(factorial(s as u64 - 1)))),
            (Basis::Okounkov, None) => {
                if s % 2 == 0 {
                    Poly::monomial(Rational::one(), s as usize / 2)
                } else {
                    &Poly::monomial(Rational::one(), (s as usize - 1) / 2)
                        + &Poly::monomial(Rational::one(), (s as usize + 1) / 2)
                }
            }
            (Basis::Monomial, None) => Poly::monomial(Rational::one(), s as usize - 1),
            (Basis::Custom(_), None) => unreachable!("custom family always has a table"),
        })
    }

    /// The numerator polynomial `Q_s(t)` (slot reported as 0 on error).
    pub fn poly(&self, s: u32) -> Result<Poly> {
        self.poly_at(s, 0)
    }

    /// Checks every entry of an index, reporting the first unsupported slot.
    pub fn check_index(&self, entries: &[u32]) -> Result<()> {
        for (slot, &s) in entries.iter().enumerate() {
            if !self.supports(s) {
                return Err(Error::UnsupportedIndex {
                    family: self.name().to_string(),
                    entry: s,
                    slot,
                });
            }
        }
        Ok(())
    }
}
