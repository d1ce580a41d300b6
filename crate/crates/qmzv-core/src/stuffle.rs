//! The quasi-shuffle (stuffle) product and the reduction relation behind it.
//!
//! For a family `Q`, products of summands contract on the diagonal via
//! `Q_r(t)·Q_s(t) = Σ_j λ_j · (1-t)^{r+s-j} · Q_j(t)`  (the reduction
//! relation); the λ are found by an exact linear solve and, for the Eulerian
//! family, independently by a Bernoulli-number closed form.

use std::collections::HashMap;
use std::sync::Mutex;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::families::{bernoulli_upto, PolyFamily};
use crate::linalg::solve_exact;
use crate::lincomb::{Index, LinComb};
use crate::poly::Poly;
use crate::rational::{binomial_rat, factorial, Rational};

/// Quasi-shuffle multiplication context for one family, with a memoized
/// reduction table (the stuffle recursion re-queries pairs heavily).
pub struct StuffleAlgebra {
    family: PolyFamily,
    table: Mutex<HashMap<(u32, u32), Vec<(u32, Rational)>>>,
}

impl StuffleAlgebra {
    pub fn new(family: PolyFamily) -> Self {
        StuffleAlgebra {
            family,
            table: Mutex::new(HashMap::new()),
        }
    }

    pub fn family(&self) -> &PolyFamily {
        &self.family
    }

    /// The reduction coefficients λ_j with
    /// `Q_r·Q_s = Σ_j λ_j (1-t)^{r+s-j} Q_j(t)`, `j` running over the
    /// family's support up to `r+s`. Zero coefficients are dropped and the
    /// list is sorted by ascending `j`.
    ///
    /// The system is solved exactly with variables ordered by descending `j`
    /// (free variables, if any, pin to zero), and the defining identity is
    /// re-checked as polynomials before the result is returned or cached.
    pub fn reduction_coeffs(&self, r: u32, s: u32) -> Result<Vec<(u32, Rational)>> {
        for (slot, &e) in [r, s].iter().enumerate() {
            if !self.family.supports(e) {
                return Err(Error::UnsupportedIndex {
                    family: self.family.name().to_string(),
                    entry: e,
                    slot,
                });
            }
        }
        let key = (r.min(s), r.max(s));
        if let Some(hit) = self.table.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }

        let target = &self.family.poly(r)? * &self.family.poly(s)?;
        let total = r + s;
        // Spanning set {(1-t)^{total-j}·Q_j : j in support, 1 ≤ j ≤ total},
        // variables ordered by descending j.
        let js: Vec<u32> = (1..=total).rev().filter(|&j| self.family.supports(j)).collect();
        let basis_polys: Vec<Poly> = js
            .iter()
            .map(|&j| Ok(&Poly::one_minus_t_pow(total - j) * &self.family.poly(j)?))
            .collect::<Result<_>>()?;

        let max_deg = basis_polys
            .iter()
            .map(|p| p.degree())
            .chain(std::iter::once(target.degree()))
            .max()
            .unwrap_or(-1)
            .max(0) as usize;
        let rows: Vec<Vec<Rational>> = (0..=max_deg)
            .map(|d| basis_polys.iter().map(|p| p.coeff(d)).collect())
            .collect();
        let rhs: Vec<Rational> = (0..=max_deg).map(|d| target.coeff(d)).collect();
        let outcome = solve_exact(&rows, &rhs);

        // Re-check the defining identity exactly, whatever the solver said.
        let mut recombined = Poly::zero();
        for (p, lambda) in basis_polys.iter().zip(&outcome.solution) {
            if !lambda.is_zero() {
                recombined = &recombined + &p.scale(lambda);
            }
        }
        if recombined != target {
            let residual = &target - &recombined;
            return Err(Error::ClosureFailure {
                family: self.family.name().to_string(),
                r,
                s,
                residual: residual.to_string(),
            });
        }

        let mut coeffs: Vec<(u32, Rational)> = js
            .into_iter()
            .zip(outcome.solution)
            .filter(|(_, l)| !l.is_zero())
            .collect();
        coeffs.sort_by_key(|&(j, _)| j);
        self.table.lock().unwrap().insert(key, coeffs.clone());
        Ok(coeffs)
    }

    /// The quasi-shuffle product of two indices:
    /// `(r,u′) ⋆ (s,v′) = r:(u′ ⋆ v) + s:(u ⋆ v′) + Σ_j λ_j · j:(u′ ⋆ v′)`,
    /// with the empty index as the unit. Expanding the result gives exactly
    /// the product of the two expansions, at every precision.
    pub fn stuffle_product(&self, u: &Index, v: &Index) -> Result<LinComb> {
        self.family.check_index(u.entries())?;
        self.family.check_index(v.entries())?;
        self.stuffle_rec(u, v)
    }

    fn stuffle_rec(&self, u: &Index, v: &Index) -> Result<LinComb> {
        let basis = self.family.basis().clone();
        let (Some((r, u_rest)), Some((s, v_rest))) = (u.split_first(), v.split_first()) else {
            let w = if u.is_empty() { v } else { u };
            return Ok(LinComb::term(basis, Rational::one(), w.clone()));
        };
        let mut out = self.stuffle_rec(&u_rest, v)?.prefixed(r);
        out.add_scaled_assign(&Rational::one(), &self.stuffle_rec(u, &v_rest)?.prefixed(s))?;
        let diagonal = self.stuffle_rec(&u_rest, &v_rest)?;
        for (j, lambda) in self.reduction_coeffs(r, s)? {
            out.add_scaled_assign(&lambda, &diagonal.prefixed(j))?;
        }
        Ok(out)
    }

    /// Bilinear extension of ⋆ to linear combinations (constants multiply
    /// through the empty-index unit).
    pub fn lincomb_mul(&self, a: &LinComb, b: &LinComb) -> Result<LinComb> {
        let mut out = LinComb::zero(self.family.basis().clone());
        for (u, cu) in a.terms() {
            for (v, cv) in b.terms() {
                let prod = self.stuffle_rec(u, v)?;
                out.add_scaled_assign(&(cu * cv), &prod)?;
            }
        }
        Ok(out)
    }
}

/// Closed form for the Eulerian-family reduction coefficient
/// `λ^j_{a,b} = (-1)^{b-1} · C(a+b-j-1, a-j) · B_{a+b-j} / (a+b-j)!`
/// (Bernoulli convention `B_1 = -1/2`).
pub fn lambda_closed_form(a: u32, b: u32, j: u32) -> Result<Rational> {
    if a < 1 || b < 1 || j < 1 || j > a {
        return Err(Error::OutOfRange {
            what: format!("lambda_closed_form needs 1 ≤ j ≤ a and a, b ≥ 1; got a={a}, b={b}, j={j}"),
        });
    }
    let n = (a + b - j) as u64;
    let sign = if b % 2 == 1 { Rational::one() } else { -Rational::one() };
    Ok(sign
        * binomial_rat((a + b - j - 1) as u64, (a - j) as u64)
        * bernoulli_upto(a + b - j).pop().unwrap()
        / Rational::from_integer(factorial(n)))
}

/// The Eulerian reduction assembled from the closed form:
/// `Q^E_r·Q^E_s = Σ_{j=1}^{r} λ^j_{r,s}(1-t)^{r+s-j}Q^E_j
///              + Σ_{j=1}^{s} λ^j_{s,r}(1-t)^{r+s-j}Q^E_j + Q^E_{r+s}`,
/// merged over equal `j`, zeros dropped, sorted ascending.
pub fn eulerian_reduction_via_formula(r: u32, s: u32) -> Result<Vec<(u32, Rational)>> {
    if r < 1 || s < 1 {
        return Err(Error::OutOfRange {
            what: format!("Eulerian entries start at 1; got ({r}, {s})"),
        });
    }
    let mut acc: HashMap<u32, Rational> = HashMap::new();
    for j in 1..=r {
        *acc.entry(j).or_insert_with(Rational::zero) += lambda_closed_form(r, s, j)?;
    }
    for j in 1..=s {
        *acc.entry(j).or_insert_with(Rational::zero) += lambda_closed_form(s, r, j)?;
    }
    *acc.entry(r + s).or_insert_with(Rational::zero) += Rational::one();
    let mut coeffs: Vec<(u32, Rational)> = acc.into_iter().filter(|(_, l)| !l.is_zero()).collect();
    coeffs.sort_by_key(|&(j, _)| j);
    Ok(coeffs)
}

/// The combined first-column coefficient
/// `λ¹_{a,b} + λ¹_{b,a} = ((-1)^{a-1} + (-1)^{b-1}) · C(a+b-2, a-1) · B_{a+b-1} / (a+b-1)!`,
/// which vanishes for a, b > 1 — the closure of the all-entries-above-1
/// subalgebra rests on exactly this.
pub fn corollary_sum(a: u32, b: u32) -> Result<Rational> {
    if a < 1 || b < 1 {
        return Err(Error::OutOfRange {
            what: format!("corollary_sum needs a, b ≥ 1; got ({a}, {b})"),
        });
    }
    let sign_a = if a % 2 == 1 { Rational::one() } else { -Rational::one() };
    let sign_b = if b % 2 == 1 { Rational::one() } else { -Rational::one() };
    Ok((sign_a + sign_b)
        * binomial_rat((a + b - 2) as u64, (a - 1) as u64)
        * bernoulli_upto(a + b - 1).pop().unwrap()
        / Rational::from_integer(factorial((a + b - 1) as u64)))
}
