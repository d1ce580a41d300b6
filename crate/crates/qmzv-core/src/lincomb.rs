//! Indices `(s_1, ..., s_l)` and formal linear combinations of them over a
//! fixed basis, with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::families::Basis;
use crate::rational::Rational;

/// A composition `(s_1, ..., s_l)` of positive integers; the empty index is
/// allowed and denotes the constant `1` summand.
///
/// Indices order by weight, then length, then lexicographically — the
/// canonical order used everywhere terms are listed or eliminated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Index {
    entries: Vec<u32>,
}

impl Index {
    pub fn new(entries: Vec<u32>) -> Self {
        Index { entries }
    }

    pub fn empty() -> Self {
        Index { entries: Vec::new() }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn weight(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(s, s_1, ..., s_l)`.
    pub fn prefixed(&self, s: u32) -> Index {
        let mut entries = Vec::with_capacity(self.entries.len() + 1);
        entries.push(s);
        entries.extend_from_slice(&self.entries);
        Index { entries }
    }

    /// The index without its first entry; `None` for the empty index.
    pub fn split_first(&self) -> Option<(u32, Index)> {
        self.entries.split_first().map(|(&s, rest)| {
            (
                s,
                Index {
                    entries: rest.to_vec(),
                },
            )
        })
    }
}

impl From<&[u32]> for Index {
    fn from(entries: &[u32]) -> Self {
        Index::new(entries.to_vec())
    }
}

impl<const N: usize> From<[u32; N]> for Index {
    fn from(entries: [u32; N]) -> Self {
        Index::new(entries.to_vec())
    }
}

impl Ord for Index {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.weight(), self.length(), &self.entries).cmp(&(
            other.weight(),
            other.length(),
            &other.entries,
        ))
    }
}

impl PartialOrd for Index {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Index {
    type Err = Error;

    /// Accepts `"2,3"`, `"(2, 3)"`, `"[2,3]"`, and `""`/`"()"`/`"[]"` for the
    /// empty index.
    fn from_str(s: &str) -> Result<Index> {
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .or_else(|| trimmed.strip_prefix('[').and_then(|t| t.strip_suffix(']')))
            .unwrap_or(trimmed)
            .trim();
        if inner.is_empty() {
            return Ok(Index::empty());
        }
        let mut entries = Vec::new();
        for part in inner.split(',') {
            let part = part.trim();
            let value: u32 = part.parse().map_err(|_| Error::Malformed {
                what: format!("index entry `{part}` is not a positive integer"),
            })?;
            if value == 0 {
                return Err(Error::OutOfRange {
                    what: "index entries must be at least 1".to_string(),
                });
            }
            entries.push(value);
        }
        Ok(Index { entries })
    }
}

/// A finite linear combination `Σ c_i · idx_i` over one basis. Zero
/// coefficients are never stored; terms iterate in canonical index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinComb {
    basis: Basis,
    terms: BTreeMap<Index, Rational>,
}

impl LinComb {
    pub fn zero(basis: Basis) -> Self {
        LinComb {
            basis,
            terms: BTreeMap::new(),
        }
    }

    /// The single term `c · idx`.
    pub fn term(basis: Basis, coeff: Rational, index: Index) -> Self {
        let mut lc = LinComb::zero(basis);
        lc.add_term(coeff, index);
        lc
    }

    /// The constant `c` (coefficient of the empty index).
    pub fn constant(basis: Basis, c: Rational) -> Self {
        LinComb::term(basis, c, Index::empty())
    }

    pub fn from_terms<I>(basis: Basis, terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Index)>,
    {
        let mut lc = LinComb::zero(basis);
        for (c, idx) in terms {
            lc.add_term(c, idx);
        }
        lc
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, index: &Index) -> Rational {
        self.terms.get(index).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in canonical `(weight, length, lex)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&Index, &Rational)> {
        self.terms.iter()
    }

    pub fn indices(&self) -> impl Iterator<Item = &Index> {
        self.terms.keys()
    }

    /// Largest weight among the terms (`0` for the zero combination).
    pub fn max_weight(&self) -> u32 {
        self.terms.keys().map(Index::weight).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, coeff: Rational, index: Index) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(index) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn check_basis(&self, other: &LinComb) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch {
                expected: self.basis.name().to_string(),
                found: other.basis.name().to_string(),
            });
        }
        Ok(())
    }

    /// `self += c · other`; fails on a basis mismatch.
    pub fn add_scaled_assign(&mut self, c: &Rational, other: &LinComb) -> Result<()> {
        self.check_basis(other)?;
        for (idx, a) in &other.terms {
            self.add_term(a * c, idx.clone());
        }
        Ok(())
    }

    pub fn add(&self, other: &LinComb) -> Result<LinComb> {
        let mut out = self.clone();
        out.add_scaled_assign(&Rational::one(), other)?;
        Ok(out)
    }

    pub fn sub(&self, other: &LinComb) -> Result<LinComb> {
        let mut out = self.clone();
        out.add_scaled_assign(&-Rational::one(), other)?;
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> LinComb {
        if c.is_zero() {
            return LinComb::zero(self.basis.clone());
        }
        LinComb {
            basis: self.basis.clone(),
            terms: self
                .terms
                .iter()
                .map(|(idx, a)| (idx.clone(), a * c))
                .collect(),
        }
    }

    pub fn neg(&self) -> LinComb {
        self.scale(&-Rational::one())
    }

    /// Applies the prefix map `idx ↦ (s, idx)` to every term; the constant
    /// term `c · ()` becomes `c · (s)`.
    pub fn prefixed(&self, s: u32) -> LinComb {
        LinComb {
            basis: self.basis.clone(),
            terms: self
                .terms
                .iter()
                .map(|(idx, c)| (idx.prefixed(s), c.clone()))
                .collect(),
        }
    }

}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let (prefix, open, close) = self.basis.delimiters();
        for (pos, (idx, c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            if pos == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if idx.is_empty() {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude} ")?;
                }
                write!(f, "{prefix}{open}{idx}{close}")?;
            }
        }
        Ok(())
    }
}
