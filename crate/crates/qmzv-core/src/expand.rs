//! Expansion of q-analogue sums into truncated q-series.
//!
//! The main entry point computes
//! `Z_Q(s_1,...,s_l) = Σ_{n_1 > ... > n_l > 0} Π_j Q_{s_j}(q^{n_j}) / (1-q^{n_j})^{s_j}`
//! with a dynamic program over the summation variables; a brute-force
//! divisor-sum enumeration is kept alongside as an independent oracle.

use std::collections::HashMap;
use std::sync::Mutex;

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};
use crate::families::{bernoulli, Basis, PolyFamily};
use crate::lincomb::{Index, LinComb};
use crate::poly::Poly;
use crate::rational::{bigint_pow, binomial, factorial, Rational};
use crate::series::QSeries;

/// `Q(q^m) / (1 - q^m)^s` to the given precision. Everything happens in the
/// compressed variable `x = q^m` — a convolution of the numerator
/// coefficients with `C(k+s-1, s-1)` — and lands on exponents `m·k`.
fn summand_series(q_poly: &Poly, s: u32, m: u32, precision: usize) -> QSeries {
    let x_prec = precision / m as usize;
    let mut compressed = vec![Rational::zero(); x_prec + 1];
    for (i, c) in q_poly.coeffs().iter().enumerate() {
        if c.is_zero() || i > x_prec {
            continue;
        }
        for (k, slot) in compressed.iter_mut().enumerate().skip(i) {
            *slot += c * Rational::from_integer(binomial(
                (k - i) as u64 + s as u64 - 1,
                s as u64 - 1,
            ));
        }
    }
    let mut coeffs = vec![Rational::zero(); precision + 1];
    for (k, c) in compressed.into_iter().enumerate() {
        coeffs[k * m as usize] = c;
    }
    QSeries::from_coeffs(coeffs)
}

/// Minimal total exponent contributed by `count` further summation variables
/// (the tail of a strictly decreasing chain ending above 0).
fn tail_min(count: usize) -> usize {
    count * (count + 1) / 2
}

fn expand_impl(
    family: &PolyFamily,
    idx: &Index,
    precision: usize,
    outer_lo: u64,
    outer_hi: u64,
) -> Result<QSeries> {
    family.check_index(idx.entries())?;
    let l = idx.length();
    if l == 0 {
        return Ok(QSeries::one(precision));
    }
    let entries = idx.entries();
    let mut polys = Vec::with_capacity(l);
    for (slot, &s) in entries.iter().enumerate() {
        polys.push(family.poly_at(s, slot)?);
    }
    // g[j] holds G_j(m) = the sum over chains m ≥ n_{j} > ... > n_{l-1} ≥ 1
    // (0-based slots) of the corresponding products; g[l] is the constant 1.
    let mut g: Vec<QSeries> = (0..l).map(|_| QSeries::zero(precision)).collect();
    g.push(QSeries::one(precision));
    for m in 1..=precision as u64 {
        // Ascending j: g[j+1] still holds G_{j+1}(m-1) when g[j] is updated.
        for j in 0..l {
            let tail = tail_min(l - 1 - j);
            if m + tail as u64 > precision as u64 {
                continue;
            }
            if j == 0 && (m < outer_lo || m > outer_hi) {
                continue;
            }
            let f = summand_series(&polys[j], entries[j], m as u32, precision);
            let prod = &f * &g[j + 1];
            g[j] = &g[j] + &prod;
        }
    }
    let out = g.swap_remove(0);
    assert!(
        out.coeff(0).is_zero(),
        "nonempty-index expansion must have zero constant term"
    );
    Ok(out)
}

/// Truncated expansion of `Z_Q(s_1,...,s_l)` for the given family; the empty
/// index yields the constant series 1.
pub fn zq_expand(family: &PolyFamily, idx: &Index, precision: usize) -> Result<QSeries> {
    expand_impl(family, idx, precision, 1, u64::MAX)
}

/// Like [`zq_expand`], but the outermost summation variable `n_1` is
/// restricted to `outer_lo ..= outer_hi`. Summing disjoint blocks reproduces
/// the full expansion exactly; the index must be nonempty.
pub fn zq_expand_outer_range(
    family: &PolyFamily,
    idx: &Index,
    precision: usize,
    outer_lo: u32,
    outer_hi: u32,
) -> Result<QSeries> {
    if idx.is_empty() {
        return Err(Error::OutOfRange {
            what: "outer-range expansion needs at least one summation variable".to_string(),
        });
    }
    if outer_lo == 0 || outer_lo > outer_hi {
        return Err(Error::OutOfRange {
            what: format!("outer range {outer_lo}..={outer_hi} is empty or starts at 0"),
        });
    }
    expand_impl(family, idx, precision, outer_lo as u64, outer_hi as u64)
}

/// Expansion of a bracket `[s_1,...,s_l]` (the Eulerian family).
pub fn bracket_expand(idx: &Index, precision: usize) -> Result<QSeries> {
    zq_expand(&PolyFamily::eulerian(), idx, precision)
}

/// Brute-force multiple-divisor-sum expansion: the coefficient of `q^n` is
/// `(1/Π_j (s_j-1)!) · Σ Π_j v_j^{s_j-1}` over all decompositions
/// `u_1 v_1 + ... + u_l v_l = n` with `u_1 > ... > u_l > 0` and `v_j ≥ 1`.
///
/// Deliberately a different algorithm from [`zq_expand`] — direct
/// enumeration, no series arithmetic — so the two can check each other.
pub fn multiple_divisor_oracle(idx: &Index, precision: usize) -> QSeries {
    assert!(
        idx.entries().iter().all(|&s| s >= 1),
        "oracle entries must be positive"
    );
    let mut integer_coeffs = vec![BigInt::zero(); precision + 1];

    fn enumerate(
        entries: &[u32],
        slot: usize,
        max_u: usize,
        spent: usize,
        factor: &BigInt,
        precision: usize,
        acc: &mut [BigInt],
    ) {
        if slot == entries.len() {
            acc[spent] += factor;
            return;
        }
        let slots_left = entries.len() - slot;
        // The later slots need a strictly decreasing positive chain, so u_j
        // is at least slots_left and the budget keeps tail_min in reserve.
        let reserve = tail_min(slots_left - 1);
        let u_cap = (precision - spent).saturating_sub(reserve).min(max_u);
        for u in slots_left..=u_cap {
            let mut v = 1usize;
            loop {
                let cost = u * v;
                if spent + cost + reserve > precision {
                    break;
                }
                let f = factor * bigint_pow(v as u64, entries[slot] - 1);
                enumerate(entries, slot + 1, u - 1, spent + cost, &f, precision, acc);
                v += 1;
            }
        }
    }

    if idx.is_empty() {
        integer_coeffs[0] = BigInt::one();
    } else {
        enumerate(
            idx.entries(),
            0,
            precision,
            0,
            &BigInt::one(),
            precision,
            &mut integer_coeffs,
        );
    }
    let mut norm = BigInt::one();
    for &s in idx.entries() {
        norm *= factorial(s as u64 - 1);
    }
    QSeries::from_coeffs(
        integer_coeffs
            .into_iter()
            .map(|n| Rational::new(n, norm.clone()))
            .collect(),
    )
}

/// Expansion of a linear combination: constant plus the scaled expansions of
/// every term. The combination's basis must match the family.
pub fn lincomb_expand(family: &PolyFamily, lc: &LinComb, precision: usize) -> Result<QSeries> {
    Expander::new(family.clone()).lincomb_series(lc, precision)
}

/// The quasi-modular constants: `G_k` as a bracket-basis combination
/// `-B_k/(2·k!) + [k]` for k ∈ {2, 4, 6}.
pub fn eisenstein(k: u32) -> Result<LinComb> {
    if !matches!(k, 2 | 4 | 6) {
        return Err(Error::OutOfRange {
            what: format!("Eisenstein constants are provided for k in {{2, 4, 6}}, not {k}"),
        });
    }
    let constant = -bernoulli(k)
        / (Rational::from_integer(2.into()) * Rational::from_integer(factorial(k as u64)));
    Ok(LinComb::from_terms(
        Basis::Eulerian,
        vec![
            (constant, Index::empty()),
            (Rational::one(), Index::from([k])),
        ],
    ))
}

/// Memoizing expansion context for one family. Series are cached at the
/// highest precision requested so far and truncated on lower-precision hits;
/// the cache is behind a mutex, so shared references stay usable across
/// threads.
pub struct Expander {
    family: PolyFamily,
    memo: Mutex<HashMap<Index, QSeries>>,
}

impl Expander {
    pub fn new(family: PolyFamily) -> Self {
        Expander {
            family,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn family(&self) -> &PolyFamily {
        &self.family
    }

    /// Memoized [`zq_expand`].
    pub fn index_series(&self, idx: &Index, precision: usize) -> Result<QSeries> {
        {
            let memo = self.memo.lock().unwrap();
            if let Some(hit) = memo.get(idx) {
                if hit.precision() >= precision {
                    return Ok(hit.truncate(precision));
                }
            }
        }
        let fresh = zq_expand(&self.family, idx, precision)?;
        let mut memo = self.memo.lock().unwrap();
        let slot = memo.entry(idx.clone()).or_insert_with(|| fresh.clone());
        if slot.precision() < fresh.precision() {
            *slot = fresh.clone();
        }
        Ok(fresh)
    }

    /// Memoized expansion of a linear combination.
    pub fn lincomb_series(&self, lc: &LinComb, precision: usize) -> Result<QSeries> {
        if lc.basis() != self.family.basis() {
            return Err(Error::BasisMismatch {
                expected: self.family.basis().name().to_string(),
                found: lc.basis().name().to_string(),
            });
        }
        let mut out = QSeries::zero(precision);
        for (idx, c) in lc.terms() {
            let series = self.index_series(idx, precision)?;
            out.add_scaled_assign(c, &series);
        }
        Ok(out)
    }
}
