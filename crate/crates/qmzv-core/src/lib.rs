//! Exact-arithmetic kernel for truncated q-series expansions of q-analogues
//! of multiple zeta values: brackets, Okounkov q-MZVs and arbitrary
//! polynomial families, their quasi-shuffle algebra, basis conversions, and
//! the derivation d = q·d/dq with exact relation finding.

pub mod catalog;
pub mod convert;
pub mod derivation;
pub mod error;
pub mod expand;
pub mod families;
pub mod json;
pub mod linalg;
pub mod lincomb;
pub mod poly;
pub mod rational;
pub mod series;
pub mod stuffle;

pub use catalog::{catalogued_identities, catalogued_identity, catalogued_okounkov_product_coeffs, kernel_relations_weight_7, verify_catalogued, CataloguedIdentity};
pub use convert::{b_coeffs, brackets_to_oz, lincomb_to_brackets, monomial_slot_decomposition, oz_length_one, slot_decompose_general, zq_to_brackets, BMatrix};
pub use derivation::{d_bracket_representation, d_bracket_representation_for_range, d_bracket_sharp_representation, d_leibniz_expand, d_oz_representation, indices_up_to_weight, relation_find, verify_identity, verify_identity_flagged, DExpr, IdentityRecord, IdentityStatus, LeibnizExpansion, RelationOutcome};
pub use error::{Error, Result};
pub use expand::{bracket_expand, eisenstein, lincomb_expand, multiple_divisor_oracle, zq_expand, zq_expand_outer_range, Expander};
pub use families::{bernoulli, bernoulli_upto, eulerian_poly, Basis, PolyFamily};
pub use json::{custom_family_from_json, lincomb_from_json, lincomb_to_json, parse_rational, rational_string, DExprJson, IdentityJson, LinCombJson, TermJson};
pub use linalg::{check_solution, solve_exact, SolveOutcome};
pub use lincomb::{Index, LinComb};
pub use poly::Poly;
pub use rational::{binomial, binomial_rat, factorial, rat, rat_int, Rational};
pub use series::{geometric_pow, poly_eval_at_qpow, QSeries};
pub use stuffle::{corollary_sum, eulerian_reduction_via_formula, lambda_closed_form, StuffleAlgebra};
