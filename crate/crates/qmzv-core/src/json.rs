//! JSON encodings for combinations, identity files and custom family files.
//!
//! Rationals travel as strings — `"p/q"`, or `"n"` when integral — never as
//! floating point. Terms serialize in the canonical (weight, length,
//! lexicographic) order so identical data always produces identical bytes.

use std::collections::BTreeMap;
use std::str::FromStr;

use num::{BigRational, Zero};
use serde::{Deserialize, Serialize};

use crate::derivation::DExpr;
use crate::error::{Error, Result};
use crate::families::{Basis, PolyFamily};
use crate::lincomb::{Index, LinComb};
use crate::poly::Poly;
use crate::rational::Rational;

/// `"p/q"`, or `"n"` when the denominator is 1.
pub fn rational_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"` or `"n"`; rejects anything else (including floats).
pub fn parse_rational(s: &str) -> Result<Rational> {
    BigRational::from_str(s.trim()).map_err(|_| Error::Malformed {
        what: format!("`{s}` is not an exact rational of the form p/q or n"),
    })
}

/// One `coeff · index` term of a serialized combination.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub index: Vec<u32>,
    pub coeff: String,
}

/// The wire form of a [`LinComb`]:
/// `{"basis": str, "constant": "p/q", "terms": [{"index": [...], "coeff": "p/q"}]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LinCombJson {
    pub basis: String,
    pub constant: String,
    pub terms: Vec<TermJson>,
}

impl LinCombJson {
    pub fn from_lincomb(lc: &LinComb) -> Self {
        let mut constant = Rational::zero();
        let mut terms = Vec::new();
        for (idx, c) in lc.terms() {
            if idx.is_empty() {
                constant = c.clone();
            } else {
                terms.push(TermJson {
                    index: idx.entries().to_vec(),
                    coeff: rational_string(c),
                });
            }
        }
        LinCombJson {
            basis: lc.basis().name().to_string(),
            constant: rational_string(&constant),
            terms,
        }
    }

    pub fn to_lincomb(&self) -> Result<LinComb> {
        let basis = Basis::parse(&self.basis)?;
        let mut lc = LinComb::constant(basis, parse_rational(&self.constant)?);
        for term in &self.terms {
            if term.index.is_empty() {
                return Err(Error::Malformed {
                    what: "the empty index belongs in the `constant` field, not in `terms`"
                        .into(),
                });
            }
            if let Some(&bad) = term.index.iter().find(|&&e| e == 0) {
                return Err(Error::OutOfRange {
                    what: format!("index entry {bad} must be at least 1"),
                });
            }
            lc.add_term(
                parse_rational(&term.coeff)?,
                Index::new(term.index.clone()),
            );
        }
        Ok(lc)
    }
}

/// The wire form of a possibly-derived combination:
/// `{"d": bool, "lincomb": LinComb}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DExprJson {
    pub d: bool,
    pub lincomb: LinCombJson,
}

impl DExprJson {
    pub fn from_dexpr(e: &DExpr) -> Self {
        DExprJson {
            d: e.d,
            lincomb: LinCombJson::from_lincomb(&e.lincomb),
        }
    }

    pub fn to_dexpr(&self) -> Result<DExpr> {
        Ok(DExpr {
            d: self.d,
            lincomb: self.lincomb.to_lincomb()?,
        })
    }
}

/// An identity file: `{"lhs": {"d": bool, "lincomb": LinComb}, "rhs": LinComb}`
/// plus an optional `"conjectural": true` marker that downgrades "verified"
/// reporting to conjectural language.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct IdentityJson {
    pub lhs: DExprJson,
    pub rhs: LinCombJson,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub conjectural: bool,
}

impl IdentityJson {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed {
            what: format!("identity file does not match the schema: {e}"),
        })
    }
}

/// Parses a combination document from JSON text.
pub fn lincomb_from_json(text: &str) -> Result<LinComb> {
    let doc: LinCombJson = serde_json::from_str(text).map_err(|e| Error::Malformed {
        what: format!("combination document does not match the schema: {e}"),
    })?;
    doc.to_lincomb()
}

/// Serializes a combination as canonical pretty JSON.
pub fn lincomb_to_json(lc: &LinComb) -> String {
    serde_json::to_string_pretty(&LinCombJson::from_lincomb(lc))
        .expect("combination serialization cannot fail")
}

/// Loads a custom family from its file format: a JSON object mapping the
/// entry `s` (as a decimal string) to the coefficient list of `Q_s`,
/// exponent-ascending, rationals as strings, constant term required to be
/// `"0"`.
pub fn custom_family_from_json(name: &str, text: &str) -> Result<PolyFamily> {
    let raw: BTreeMap<String, Vec<String>> =
        serde_json::from_str(text).map_err(|e| Error::Malformed {
            what: format!("custom family file does not match the schema: {e}"),
        })?;
    if raw.is_empty() {
        return Err(Error::Malformed {
            what: "custom family file defines no polynomials".into(),
        });
    }
    let mut polys = BTreeMap::new();
    for (key, coeffs) in raw {
        let s: u32 = key.trim().parse().map_err(|_| Error::Malformed {
            what: format!("family entry key `{key}` is not a positive integer"),
        })?;
        match coeffs.first() {
            Some(c0) if c0.trim() == "0" => {}
            _ => {
                return Err(Error::Malformed {
                    what: format!(
                        "polynomial for entry {s} must list its constant term first, as \"0\""
                    ),
                })
            }
        }
        let parsed: Vec<Rational> = coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<_>>()?;
        polys.insert(s, Poly::from_coeffs(parsed));
    }
    PolyFamily::custom(name, polys)
}
