//! Error type shared across the crate.

/// Everything that can go wrong when building, expanding, multiplying or
/// converting q-series sums.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The family does not define a polynomial for this entry (for example
    /// entry `1` in a family whose sums only converge from `2` on).
    #[error("family `{family}` does not support entry {entry} (position {slot} of the index)")]
    UnsupportedIndex {
        family: String,
        entry: u32,
        slot: usize,
    },

    /// A product `Q_r · Q_s` could not be rewritten over the family's own
    /// polynomials: after eliminating every representable term a nonzero
    /// residual remained.
    #[error("no closed product reduction in family `{family}` for entries ({r}, {s}); residual {residual}")]
    ClosureFailure {
        family: String,
        r: u32,
        s: u32,
        residual: String,
    },

    /// A conversion target cannot express the requested object.
    #[error("not representable: {what}")]
    NotRepresentable { what: String },

    /// Custom family validation: `deg Q_s <= s` is required so each summand
    /// `Q_s(q^n)/(1-q^n)^s` stays a power series in `q^n` of bounded pole order.
    #[error("custom polynomial for entry {entry} has degree {degree}, above the allowed {max}")]
    DegreeTooHigh { entry: u32, degree: i64, max: u32 },

    /// Custom family validation: `Q_s(0) = 0` is required, otherwise the sum
    /// over `n` of `Q_s(q^n)/(1-q^n)^s` has a divergent constant term.
    #[error("custom polynomial for entry {entry} has a nonzero constant term")]
    NonzeroConstantTerm { entry: u32 },

    /// Custom family validation: `Q_s(1) ≠ 0` is required (a numerator that
    /// vanishes at 1 kills the q → 1 normalisation the families exist for).
    #[error("custom polynomial for entry {entry} vanishes at t = 1")]
    VanishesAtOne { entry: u32 },

    /// An argument is outside the range an operation is defined for.
    #[error("out of range: {what}")]
    OutOfRange { what: String },

    /// An identity that was constructed symbolically failed its numeric
    /// cross-check; the first disagreeing exponent is reported.
    #[error("internal verification failed for {context}: series differ at q^{exponent}")]
    VerificationFailure { context: String, exponent: usize },

    /// The weighted combination that should eliminate all length-one tail
    /// terms has no solution.
    #[error("cancellation failure: {detail}")]
    CancellationFailure { detail: String },

    /// Two linear combinations over different bases were mixed.
    #[error("basis mismatch: expected `{expected}`, found `{found}`")]
    BasisMismatch { expected: String, found: String },

    /// A basis name from the command line or a JSON document is unknown.
    #[error("unknown basis `{name}` (expected eulerian, okounkov or monomial)")]
    UnknownBasis { name: String },

    /// Text or a document that should encode an index, rational or
    /// combination could not be parsed at all (as opposed to parsing fine
    /// but being inadmissible).
    #[error("malformed input: {what}")]
    Malformed { what: String },

    /// A linear system that was expected to determine coefficients turned out
    /// to be unsolvable.
    #[error("no solution: {context}")]
    NoSolution { context: String },
}

pub type Result<T> = std::result::Result<T, Error>;
