//! Basis conversion between q-analogue families and the bracket basis.
//!
//! The engine is the per-slot decomposition
//! `Q(t)/(1-t)^s = Σ_{j=2}^{s} λ_j · Q^E_j(t)/(1-t)^j`, valid whenever
//! `deg Q ≤ s-1` and `Q(0) = 0`; applied independently in every slot of a
//! nested sum it rewrites any such family over brackets, and its triangular
//! structure makes the reverse direction a back-substitution.

use std::collections::HashMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::families::{Basis, PolyFamily};
use crate::lincomb::{Index, LinComb};
use crate::poly::Poly;
use crate::rational::{factorial, Rational};

/// The numbers `b^k_{i,j}` defined by
/// `Σ_{j=1}^{k-1} (b^k_{i,j}/j!) · t^j = C(t+k-1-i, k-1)`;
/// returns the row `(b^k_{i,1}, ..., b^k_{i,k-1})`.
pub fn b_coeffs(k: u32, i: u32) -> Result<Vec<Rational>> {
    if k < 2 || i < 1 || i > k - 1 {
        return Err(Error::OutOfRange {
            what: format!("b-coefficients need k ≥ 2 and 1 ≤ i ≤ k-1; got k={k}, i={i}"),
        });
    }
    // C(t+k-1-i, k-1) = Π_{c=0}^{k-2} (t + k-1-i-c) / (k-1)!
    let mut prod = Poly::one();
    for c in 0..=(k - 2) as i64 {
        let shift = (k - 1 - i) as i64 - c;
        prod = &prod * &Poly::from_coeffs(vec![
            Rational::from_integer(shift.into()),
            Rational::one(),
        ]);
    }
    let prod = prod.scale(&(Rational::one() / Rational::from_integer(factorial(k as u64 - 1))));
    assert!(
        prod.coeff(0).is_zero(),
        "C(t+k-1-i, k-1) must have zero constant term for 1 ≤ i ≤ k-1"
    );
    Ok((1..=(k - 1) as usize)
        .map(|j| prod.coeff(j) * Rational::from_integer(factorial(j as u64)))
        .collect())
}

/// The full table `b^k_{i,j}` for one `k`, with the defining identity of
/// every row re-checked at construction.
pub struct BMatrix {
    k: u32,
    rows: Vec<Vec<Rational>>,
}

impl BMatrix {
    pub fn new(k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::OutOfRange {
                what: format!("BMatrix needs k ≥ 2; got {k}"),
            });
        }
        let rows = (1..=k - 1).map(|i| b_coeffs(k, i)).collect::<Result<_>>()?;
        Ok(BMatrix { k, rows })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `b^k_{i,j}` for `1 ≤ i, j ≤ k-1`.
    pub fn value(&self, i: u32, j: u32) -> &Rational {
        &self.rows[(i - 1) as usize][(j - 1) as usize]
    }
}

/// `Σ λ_j (1-t)^{s-j} Q^E_j(t)` — the right-hand side every decomposition
/// here must reproduce.
fn recombine(parts: &[(u32, Rational)], s: u32) -> Poly {
    let eulerian = PolyFamily::eulerian();
    let mut acc = Poly::zero();
    for (j, lambda) in parts {
        if !lambda.is_zero() {
            let basis_poly = &Poly::one_minus_t_pow(s - j) * &eulerian.poly(*j).unwrap();
            acc = &acc + &basis_poly.scale(lambda);
        }
    }
    acc
}

/// Decomposition of a single monomial slot:
/// `t^i = Σ_{j=2}^{k} b^k_{i,j-1} (1-t)^{k-j} Q^E_j(t)`; the list carries
/// every `j` from 2 to `k`, zero coefficients included, and the identity is
/// re-checked exactly before returning.
pub fn monomial_slot_decomposition(i: u32, k: u32) -> Result<Vec<(u32, Rational)>> {
    if k < 2 || i < 1 || i > k - 1 {
        return Err(Error::OutOfRange {
            what: format!("slot decomposition needs k ≥ 2 and 1 ≤ i ≤ k-1; got k={k}, i={i}"),
        });
    }
    let row = b_coeffs(k, i)?;
    let parts: Vec<(u32, Rational)> = (2..=k).map(|j| (j, row[(j - 2) as usize].clone())).collect();
    let expect = Poly::monomial(Rational::one(), i as usize);
    assert_eq!(
        recombine(&parts, k),
        expect,
        "monomial slot decomposition failed its defining identity"
    );
    Ok(parts)
}

/// Decomposition of an arbitrary admissible numerator:
/// `Q(t) = Σ_{j=2}^{s} λ_j (1-t)^{s-j} Q^E_j(t)` for `deg Q ≤ s-1`,
/// `Q(0) = 0`. Zero coefficients are dropped; the identity is re-checked.
pub fn slot_decompose_general(q: &Poly, s: u32) -> Result<Vec<(u32, Rational)>> {
    if s < 2 {
        return Err(Error::OutOfRange {
            what: format!("slot decomposition needs s ≥ 2; got {s}"),
        });
    }
    if !q.coeff(0).is_zero() {
        return Err(Error::NonzeroConstantTerm { entry: s });
    }
    if q.degree() > (s - 1) as i64 {
        return Err(Error::DegreeTooHigh {
            entry: s,
            degree: q.degree(),
            max: s - 1,
        });
    }
    let mut acc: Vec<Rational> = vec![Rational::zero(); (s + 1) as usize]; // index j
    for (i, c) in q.coeffs().iter().enumerate().skip(1) {
        if c.is_zero() {
            continue;
        }
        for (j, b) in monomial_slot_decomposition(i as u32, s)? {
            acc[j as usize] += c * b;
        }
    }
    let parts: Vec<(u32, Rational)> = (2..=s)
        .filter(|&j| !acc[j as usize].is_zero())
        .map(|j| (j, acc[j as usize].clone()))
        .collect();
    assert_eq!(
        recombine(&parts, s),
        *q,
        "general slot decomposition failed its defining identity"
    );
    Ok(parts)
}

/// Per-slot decompositions for one family, `s ↦ slot_decompose_general(Q_s, s)`.
fn slot_maps(family: &PolyFamily, idx: &Index) -> Result<Vec<Vec<(u32, Rational)>>> {
    family.check_index(idx.entries())?;
    idx.entries()
        .iter()
        .map(|&s| {
            if s < 2 {
                return Err(Error::NotRepresentable {
                    what: format!(
                        "entry {s}: only indices with every entry above 1 convert to brackets"
                    ),
                });
            }
            slot_decompose_general(&family.poly(s)?, s)
        })
        .collect()
}

/// Multilinear expansion of independent per-slot substitutions, slot by slot
/// left to right.
fn multilinear(slot_parts: &[Vec<(u32, Rational)>], target: Basis) -> LinComb {
    let mut partial: Vec<(Rational, Vec<u32>)> = vec![(Rational::one(), Vec::new())];
    for parts in slot_parts {
        let mut next = Vec::with_capacity(partial.len() * parts.len());
        for (c, entries) in &partial {
            for (j, lambda) in parts {
                if lambda.is_zero() {
                    continue;
                }
                let mut e = entries.clone();
                e.push(*j);
                next.push((c * lambda, e));
            }
        }
        partial = next;
    }
    LinComb::from_terms(
        target,
        partial.into_iter().map(|(c, e)| (c, Index::new(e))),
    )
}

/// Rewrites `Z_Q(idx)` over the bracket basis. Every entry must be at least
/// 2 and every numerator must have degree at most `entry - 1`; expanding the
/// result in the Eulerian family reproduces the expansion of the input in
/// its own family, at every precision.
pub fn zq_to_brackets(family: &PolyFamily, idx: &Index) -> Result<LinComb> {
    let maps = slot_maps(family, idx)?;
    Ok(multilinear(&maps, Basis::Eulerian))
}

/// [`zq_to_brackets`] extended linearly to a combination (the constant term
/// passes through).
pub fn lincomb_to_brackets(family: &PolyFamily, lc: &LinComb) -> Result<LinComb> {
    if lc.basis() != family.basis() {
        return Err(Error::BasisMismatch {
            expected: family.basis().name().to_string(),
            found: lc.basis().name().to_string(),
        });
    }
    let mut out = LinComb::zero(Basis::Eulerian);
    for (idx, c) in lc.terms() {
        if idx.is_empty() {
            out.add_term(c.clone(), Index::empty());
        } else {
            out.add_scaled_assign(c, &zq_to_brackets(family, idx)?)?;
        }
    }
    Ok(out)
}

/// The closed form for a single Okounkov value over brackets:
/// `Z(2m) = Σ_j b^{2m}_{m,j-1} [j]` and
/// `Z(2m+1) = Σ_j (b^{2m+1}_{m,j-1} + b^{2m+1}_{m+1,j-1}) [j]`.
pub fn oz_length_one(k: u32) -> Result<LinComb> {
    if k < 2 {
        return Err(Error::OutOfRange {
            what: format!("length-one conversion needs an entry ≥ 2; got {k}"),
        });
    }
    let mut acc: HashMap<u32, Rational> = HashMap::new();
    let rows: &[u32] = if k % 2 == 0 { &[k / 2] } else { &[(k - 1) / 2, (k + 1) / 2] };
    for &i in rows {
        let row = b_coeffs(k, i)?;
        for j in 2..=k {
            *acc.entry(j).or_insert_with(Rational::zero) += &row[(j - 2) as usize];
        }
    }
    Ok(LinComb::from_terms(
        Basis::Eulerian,
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (c, Index::from([j]))),
    ))
}

/// Per-slot inverse of the Okounkov slot map: bracket slot `s` written over
/// Okounkov slots `2..=s`, obtained by back-substitution through the
/// weight-triangular forward maps.
fn bracket_slot_to_oz(s: u32, memo: &mut HashMap<u32, Vec<(u32, Rational)>>) -> Result<Vec<(u32, Rational)>> {
    if let Some(hit) = memo.get(&s) {
        return Ok(hit.clone());
    }
    let family = PolyFamily::okounkov();
    let forward = slot_decompose_general(&family.poly(s)?, s)?;
    let lead = forward
        .iter()
        .find(|(j, _)| *j == s)
        .map(|(_, c)| c.clone())
        .expect("slot map is triangular with nonzero leading coefficient");
    // [s] = (1/lead)·Z(s) - Σ_{j<s} (f_{s,j}/lead)·[j], then rewrite the
    // lower brackets recursively.
    let mut acc: HashMap<u32, Rational> = HashMap::new();
    acc.insert(s, Rational::one() / &lead);
    for (j, f) in &forward {
        if *j == s {
            continue;
        }
        let scale = f / &lead;
        for (m, g) in bracket_slot_to_oz(*j, memo)? {
            *acc.entry(m).or_insert_with(Rational::zero) -= &scale * g;
        }
    }
    let mut out: Vec<(u32, Rational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    out.sort_by_key(|&(j, _)| j);
    memo.insert(s, out.clone());
    Ok(out)
}

/// Rewrites a bracket-basis combination (all entries ≥ 2) over the Okounkov
/// basis; inverse of [`zq_to_brackets`] for the Okounkov family. Expanding
/// the output in the Okounkov family reproduces the input's Eulerian
/// expansion at every precision.
pub fn brackets_to_oz(lc: &LinComb) -> Result<LinComb> {
    if *lc.basis() != Basis::Eulerian {
        return Err(Error::BasisMismatch {
            expected: Basis::Eulerian.name().to_string(),
            found: lc.basis().name().to_string(),
        });
    }
    let mut memo: HashMap<u32, Vec<(u32, Rational)>> = HashMap::new();
    let mut out = LinComb::zero(Basis::Okounkov);
    for (idx, c) in lc.terms() {
        if idx.is_empty() {
            out.add_term(c.clone(), Index::empty());
            continue;
        }
        if let Some(&bad) = idx.entries().iter().find(|&&e| e < 2) {
            return Err(Error::NotRepresentable {
                what: format!(
                    "bracket entry {bad} in {idx}: only all-entries-above-1 brackets convert"
                ),
            });
        }
        let slot_parts: Vec<Vec<(u32, Rational)>> = idx
            .entries()
            .iter()
            .map(|&s| bracket_slot_to_oz(s, &mut memo))
            .collect::<Result<_>>()?;
        out.add_scaled_assign(c, &multilinear(&slot_parts, Basis::Okounkov))?;
    }
    Ok(out)
}
