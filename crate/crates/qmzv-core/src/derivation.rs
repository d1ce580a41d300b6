//! The derivation `d = q·d/dq` on q-analogue combinations: closed-form
//! bracket representations of `d[k]`, the construction placing `d Z(k)` in
//! the span of the Okounkov values, identity verification, Leibniz
//! expansion, and an exact relation finder over candidate index pools.

use std::collections::BTreeSet;
use std::fmt;

use num::{One, Zero};

use crate::convert::{brackets_to_oz, oz_length_one};
use crate::error::{Error, Result};
use crate::expand::{bracket_expand, lincomb_expand, zq_expand, Expander};
use crate::families::{Basis, PolyFamily};
use crate::linalg::solve_exact;
use crate::lincomb::{Index, LinComb};
use crate::rational::{binomial_rat, rat_int, Rational};
use crate::series::QSeries;
use crate::stuffle::StuffleAlgebra;

/// A linear combination, optionally wrapped by the derivation marker `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DExpr {
    pub d: bool,
    pub lincomb: LinComb,
}

impl DExpr {
    pub fn plain(lincomb: LinComb) -> Self {
        DExpr { d: false, lincomb }
    }

    pub fn derived(lincomb: LinComb) -> Self {
        DExpr { d: true, lincomb }
    }

    /// Expands to precision `n` in the family named by the combination's
    /// basis, applying `q·d/dq` when marked.
    pub fn expand(&self, n: usize) -> Result<QSeries> {
        let family = PolyFamily::for_basis(self.lincomb.basis())?;
        let series = lincomb_expand(&family, &self.lincomb, n)?;
        Ok(if self.d { series.q_derive() } else { series })
    }
}

impl fmt::Display for DExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.d {
            return write!(f, "{}", self.lincomb);
        }
        let mut terms = self.lincomb.terms();
        let single_unit = match (terms.next(), terms.next()) {
            (Some((idx, c)), None) => !idx.is_empty() && c.is_one(),
            _ => false,
        };
        if single_unit {
            write!(f, "d {}", self.lincomb)
        } else {
            write!(f, "d ({})", self.lincomb)
        }
    }
}

/// Outcome of an exact coefficient comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityStatus {
    Verified,
    Refuted { exponent: usize },
    /// Holds to the checked precision but is only claimed numerically;
    /// never reported with "verified" language.
    Conjectural,
}

/// One checked identity `lhs = rhs` together with the comparison result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityRecord {
    pub lhs: DExpr,
    pub rhs: LinComb,
    pub checked_precision: usize,
    pub status: IdentityStatus,
}

impl IdentityRecord {
    pub fn is_verified(&self) -> bool {
        self.status == IdentityStatus::Verified
    }

    /// Stable one-word-ish status label for reports.
    pub fn status_label(&self) -> String {
        match &self.status {
            IdentityStatus::Verified => format!("verified (N={})", self.checked_precision),
            IdentityStatus::Refuted { exponent } => {
                format!("refuted at exponent {exponent}")
            }
            IdentityStatus::Conjectural => {
                format!("conjectural-verified-to-{}", self.checked_precision)
            }
        }
    }
}

impl fmt::Display for IdentityRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {} : {}", self.lhs, self.rhs, self.status_label())
    }
}

/// Expands both sides to precision `n` (applying `q·d/dq` where marked) and
/// compares all coefficients exactly; a `conjectural` identity that survives
/// is labeled conjectural rather than verified.
pub fn verify_identity_flagged(
    lhs: &DExpr,
    rhs: &LinComb,
    n: usize,
    conjectural: bool,
) -> Result<IdentityRecord> {
    let left = lhs.expand(n)?;
    let right = DExpr::plain(rhs.clone()).expand(n)?;
    let status = match (0..=n).find(|&i| left.coeff(i) != right.coeff(i)) {
        Some(exponent) => IdentityStatus::Refuted { exponent },
        None if conjectural => IdentityStatus::Conjectural,
        None => IdentityStatus::Verified,
    };
    Ok(IdentityRecord {
        lhs: lhs.clone(),
        rhs: rhs.clone(),
        checked_precision: n,
        status,
    })
}

/// [`verify_identity_flagged`] for an identity claimed as proven.
pub fn verify_identity(lhs: &DExpr, rhs: &LinComb, n: usize) -> Result<IdentityRecord> {
    verify_identity_flagged(lhs, rhs, n, false)
}

/// The bracket representation of `d[k-2]` built from the splitting
/// `k = s1 + s2` with the `[a,b]` sum running over `a + b = total`:
/// `d[k-2] = (k-2)/C(k-2,s1-1) · ( [s1]·[s2] - [s1,s2] - [s2,s1]
///   + C(k-2,s1-1)[k-1] - Σ_{a+b=total, a>s1} (C(a-1,s1-1)+C(a-1,s2-1)-δ_{a,s2}) [a,b] )`.
/// No series verification is performed here; this is the raw candidate used
/// to settle the summation range by computation.
pub fn d_bracket_representation_for_range(
    k: u32,
    s1: u32,
    s2: u32,
    total: u32,
) -> Result<LinComb> {
    if s1 < 1 || s2 < 1 || s1 + s2 != k || k < 3 {
        return Err(Error::OutOfRange {
            what: format!(
                "derivative splitting needs s1, s2 ≥ 1 with s1 + s2 = k ≥ 3; got k={k}, s1={s1}, s2={s2}"
            ),
        });
    }
    // The display is stated for an arbitrary splitting but expands correctly
    // only with the smaller part named first; normalize by swapping.
    let (s1, s2) = if s1 <= s2 { (s1, s2) } else { (s2, s1) };
    let lead = binomial_rat((k - 2) as u64, (s1 - 1) as u64);
    if lead.is_zero() {
        return Err(Error::OutOfRange {
            what: format!("C(k-2, s1-1) vanishes for k={k}, s1={s1}"),
        });
    }

    let algebra = StuffleAlgebra::new(PolyFamily::eulerian());
    let mut rhs = algebra.stuffle_product(&Index::from([s1]), &Index::from([s2]))?;
    rhs.add_term(rat_int(-1), Index::from([s1, s2]));
    rhs.add_term(rat_int(-1), Index::from([s2, s1]));
    rhs.add_term(lead.clone(), Index::from([k - 1]));
    for a in (s1 + 1)..total {
        let b = total - a;
        let mut c = binomial_rat((a - 1) as u64, (s1 - 1) as u64)
            + binomial_rat((a - 1) as u64, (s2 - 1) as u64);
        if a == s2 {
            c -= Rational::one();
        }
        rhs.add_term(-c, Index::from([a, b]));
    }
    Ok(rhs.scale(&(rat_int((k - 2) as i64) / lead)))
}

/// Precision at which every derivative representation is re-checked against
/// the direct q-series derivative before being returned.
const D_REP_CHECK_PRECISION: usize = 80;

/// The verified bracket representation of `d[k-2]` for the splitting
/// `k = s1 + s2`; the `[a,b]` range is `a + b = k`, the unique candidate
/// range under which the display expands to `q·d/dq [k-2]` (kept re-checked
/// here at every call).
pub fn d_bracket_representation(k: u32, s1: u32, s2: u32) -> Result<LinComb> {
    let rep = d_bracket_representation_for_range(k, s1, s2, k)?;
    let n = D_REP_CHECK_PRECISION;
    let got = lincomb_expand(&PolyFamily::eulerian(), &rep, n)?;
    let want = bracket_expand(&Index::from([k - 2]), n)?.q_derive();
    if let Some(e) = (0..=n).find(|&i| got.coeff(i) != want.coeff(i)) {
        return Err(Error::VerificationFailure {
            context: format!(
                "bracket representation of the derivative of [{}] from splitting ({s1},{s2})",
                k - 2
            ),
            exponent: e,
        });
    }
    Ok(rep)
}

/// A representation of `d[k]` containing no bracket with an entry equal
/// to 1: the two splittings `(1, k+1)` and `(2, k)` of the weight-`k+2`
/// display are combined with exact weights `w1 + w2 = 1` chosen so that
/// every 1-entry term cancels.
pub fn d_bracket_sharp_representation(k: u32) -> Result<LinComb> {
    if k < 2 {
        return Err(Error::OutOfRange {
            what: format!("1-entry-free derivative representations need k ≥ 2; got {k}"),
        });
    }
    let r1 = d_bracket_representation(k + 2, 1, k + 1)?;
    let r2 = d_bracket_representation(k + 2, 2, k)?;
    let has_one = |idx: &Index| idx.entries().iter().any(|&e| e == 1);
    let one_indices: BTreeSet<Index> = r1
        .indices()
        .chain(r2.indices())
        .filter(|idx| has_one(idx))
        .cloned()
        .collect();

    let mut rows = vec![vec![Rational::one(), Rational::one()]];
    let mut rhs = vec![Rational::one()];
    for idx in &one_indices {
        rows.push(vec![r1.coeff(idx), r2.coeff(idx)]);
        rhs.push(Rational::zero());
    }
    let outcome = solve_exact(&rows, &rhs);
    if !outcome.consistent {
        return Err(Error::CancellationFailure {
            detail: format!(
                "no weighting of the ({},{}) and ({},{}) splittings cancels all {} 1-entry terms of d[{k}]",
                1,
                k + 1,
                2,
                k,
                one_indices.len()
            ),
        });
    }
    let mut combo = r1.scale(&outcome.solution[0]);
    combo.add_scaled_assign(&outcome.solution[1], &r2)?;
    if let Some(bad) = combo.indices().find(|idx| has_one(idx)) {
        return Err(Error::CancellationFailure {
            detail: format!("1-entry term {bad} survives the weighted combination for d[{k}]"),
        });
    }
    Ok(combo)
}

/// The derivative of a single Okounkov value written over Okounkov values:
/// `Z(k) = Σ_j c_j [j]` termwise, every `d[j]` replaced by its 1-entry-free
/// bracket representation, and the result converted back. Every index in
/// the output has all entries ≥ 2, and the expansion is re-checked against
/// `q·d/dq` of the direct expansion before returning.
pub fn d_oz_representation(k: u32) -> Result<LinComb> {
    if k < 2 {
        return Err(Error::UnsupportedIndex {
            family: "okounkov".into(),
            entry: k,
            slot: 0,
        });
    }
    let over_brackets = oz_length_one(k)?;
    let mut acc = LinComb::zero(Basis::Eulerian);
    for (idx, c) in over_brackets.terms() {
        let j = idx.entries()[0];
        acc.add_scaled_assign(c, &d_bracket_sharp_representation(j)?)?;
    }
    let result = brackets_to_oz(&acc)?;

    let n = D_REP_CHECK_PRECISION;
    let family = PolyFamily::okounkov();
    let got = lincomb_expand(&family, &result, n)?;
    let want = zq_expand(&family, &Index::from([k]), n)?.q_derive();
    if let Some(e) = (0..=n).find(|&i| got.coeff(i) != want.coeff(i)) {
        return Err(Error::VerificationFailure {
            context: format!("derivative representation of Z({k}) over Okounkov values"),
            exponent: e,
        });
    }
    Ok(result)
}

/// A particular exact solution `target = Σ c_i · candidate_i` together with
/// the rank evidence for how determined it was.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationOutcome {
    pub combination: LinComb,
    pub rank: usize,
    pub kernel_dim: usize,
    pub checked_precision: usize,
}

/// Solves `Σ c_i · (expansion of candidate_i) = target` exactly over the
/// coefficient rows `q¹..q^N`, re-verifies the particular solution on all
/// rows, and reports the kernel dimension when the candidate pool is
/// dependent. Candidates are deduplicated and ordered by weight, then
/// length, then lexicographically. Unless `force` is set, `n` must be at
/// least twice the candidate count so "verified to n" is strong evidence.
pub fn relation_find(
    family: &PolyFamily,
    target: &QSeries,
    candidates: &[Index],
    n: usize,
    force: bool,
) -> Result<RelationOutcome> {
    let pool: Vec<Index> = {
        let set: BTreeSet<Index> = candidates.iter().cloned().collect();
        set.into_iter().collect()
    };
    for idx in &pool {
        family.check_index(idx.entries())?;
        if idx.is_empty() {
            return Err(Error::OutOfRange {
                what: "the empty index is not a relation candidate".into(),
            });
        }
    }
    if n < 1 {
        return Err(Error::OutOfRange {
            what: "relation finding needs precision ≥ 1".into(),
        });
    }
    if !force && n < 2 * pool.len() {
        return Err(Error::OutOfRange {
            what: format!(
                "precision {n} is below the safety margin of 2 × {} candidates = {}; raise the precision or force the search",
                pool.len(),
                2 * pool.len()
            ),
        });
    }
    if target.precision() < n {
        return Err(Error::OutOfRange {
            what: format!(
                "target series carries only {} coefficients but {n} are required",
                target.precision()
            ),
        });
    }
    if !target.coeff(0).is_zero() {
        return Err(Error::NoSolution {
            context: "the target has a nonzero constant term, which no combination of nonempty indices can match".into(),
        });
    }

    let expander = Expander::new(family.clone());
    let expansions: Vec<QSeries> = pool
        .iter()
        .map(|idx| expander.index_series(idx, n))
        .collect::<Result<_>>()?;

    let rows: Vec<Vec<Rational>> = (1..=n)
        .map(|i| expansions.iter().map(|s| s.coeff(i).clone()).collect())
        .collect();
    let rhs: Vec<Rational> = (1..=n).map(|i| target.coeff(i).clone()).collect();
    let outcome = solve_exact(&rows, &rhs);
    if !outcome.consistent {
        return Err(Error::NoSolution {
            context: format!(
                "inconsistent system: target is outside the span of the {} candidates (rank {}) over {n} coefficient rows",
                pool.len(),
                outcome.rank
            ),
        });
    }

    let combination = LinComb::from_terms(
        family.basis().clone(),
        outcome
            .solution
            .iter()
            .zip(&pool)
            .map(|(c, idx)| (c.clone(), idx.clone())),
    );
    // independent re-check of the particular solution on every row
    let check = lincomb_expand(family, &combination, n)?;
    if let Some(e) = (1..=n).find(|&i| check.coeff(i) != target.coeff(i)) {
        return Err(Error::VerificationFailure {
            context: "relation re-verification after elimination".into(),
            exponent: e,
        });
    }
    Ok(RelationOutcome {
        combination,
        rank: outcome.rank,
        kernel_dim: outcome.kernel_dim,
        checked_precision: n,
    })
}

/// Every nonempty index over the family's support with weight at most
/// `max_weight`, in canonical (weight, length, lexicographic) order.
pub fn indices_up_to_weight(family: &PolyFamily, max_weight: u32) -> Vec<Index> {
    fn rec(family: &PolyFamily, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<Index>) {
        for s in family.min_entry()..=remaining {
            if !family.supports(s) {
                continue;
            }
            prefix.push(s);
            out.push(Index::new(prefix.clone()));
            rec(family, remaining - s, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(family, max_weight, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// The formal Leibniz expansion `d(f_1 ⋯ f_n) = Σ_i f_1 ⋯ d(f_i) ⋯ f_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizExpansion {
    factors: Vec<LinComb>,
}

impl LeibnizExpansion {
    pub fn factors(&self) -> &[LinComb] {
        &self.factors
    }

    /// The summands, one per factor: summand `i` is the product of the
    /// factors with the derivation marker on factor `i`.
    pub fn summands(&self) -> Vec<Vec<DExpr>> {
        (0..self.factors.len())
            .map(|i| {
                self.factors
                    .iter()
                    .enumerate()
                    .map(|(j, f)| DExpr {
                        d: i == j,
                        lincomb: f.clone(),
                    })
                    .collect()
            })
            .collect()
    }

    /// Expands the whole expression; by the Leibniz rule this equals
    /// `q·d/dq` of the product of the factor expansions.
    pub fn expand(&self, n: usize) -> Result<QSeries> {
        let family = PolyFamily::for_basis(self.factors[0].basis())?;
        let plain: Vec<QSeries> = self
            .factors
            .iter()
            .map(|f| lincomb_expand(&family, f, n))
            .collect::<Result<_>>()?;
        let mut total = QSeries::zero(n);
        for i in 0..plain.len() {
            let mut prod = plain[i].q_derive();
            for (j, f) in plain.iter().enumerate() {
                if j != i {
                    prod = &prod * f;
                }
            }
            total = &total + &prod;
        }
        Ok(total)
    }
}

impl fmt::Display for LeibnizExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, summand) in self.summands().iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            for (j, factor) in summand.iter().enumerate() {
                if j > 0 {
                    write!(f, "·")?;
                }
                write!(f, "({factor})")?;
            }
        }
        Ok(())
    }
}

/// Builds the Leibniz expansion of a product of at least two combinations
/// over a common basis.
pub fn d_leibniz_expand(factors: Vec<LinComb>) -> Result<LeibnizExpansion> {
    if factors.len() < 2 {
        return Err(Error::OutOfRange {
            what: format!(
                "the Leibniz expansion needs at least 2 factors; got {}",
                factors.len()
            ),
        });
    }
    if let Some(bad) = factors.iter().find(|f| f.basis() != factors[0].basis()) {
        return Err(Error::BasisMismatch {
            expected: factors[0].basis().name().to_string(),
            found: bad.basis().name().to_string(),
        });
    }
    Ok(LeibnizExpansion { factors })
}
