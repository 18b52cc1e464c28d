//! Calculus of weight sequences and their associated weight functions.
//!
//! The library implements:
//!
//! * [`extreal`] — extended-real arithmetic with the exact conventions the
//!   rest of the crate relies on (`0/0 = 0`, `∞ − ∞ = 0`, `0·∞ = 0`, …),
//! * [`sequences`] — weight sequences `M = (M_p)` in quotient representation,
//!   their regularity predicates, pointwise algebra, and comparison relations,
//! * [`assoc`] — exact piecewise evaluation of the associated weight function
//!   `ω_M(t) = sup_p log(M_0 t^p / M_p)` and sequence reconstruction,
//! * [`weightfn`] — a closed expression tree of weight functions (monomials,
//!   `log_+`, associated weights, conjugates, variable transforms),
//! * [`conjugate`] — the two generalized Legendre conjugates: the lower
//!   conjugate `σ⋆̌τ(t) = inf_s {σ(s) + τ(t/s)}` and the upper conjugate
//!   `σ⋆̂τ(t) = sup_s {σ(s) − τ(s/t)}`, with grid evaluators, exact
//!   sequence fast paths, and well-definedness diagnostics,
//! * [`indices`] — growth-index estimation `γ(ω)`, `γ̄(ω)` via doubling-type
//!   probe conditions, with analytic fast paths,
//! * [`verify`] — a named catalogue of identity/inequality checks comparing
//!   exact paths against brute-force grid oracles, reported as CSV,
//! * [`expr`] / [`seqfile`] — the textual expression grammar and the
//!   sequence-definition file format shared with the CLI.
//!
//! Everything is pure and immutable after construction; grid sweeps are
//! data-parallel when the `parallel` feature (default) is enabled and the
//! results are bitwise independent of sweep order.

pub mod assoc;
pub mod conjugate;
pub mod expr;
pub mod extreal;
pub mod indices;
pub mod parallel;
pub mod seqfile;
pub mod sequences;
pub mod verify;
pub mod weightfn;

pub use extreal::ExtReal;
pub use sequences::WeightSequence;
pub use weightfn::WeightFunction;

/// Errors surfaced by construction and evaluation APIs.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A finite value was required but NaN was supplied.
    #[error("NaN is not a valid extended real")]
    NanRejected,
    /// Sequence construction was given invalid data.
    #[error("invalid weight sequence: {0}")]
    InvalidSequence(String),
    /// An operation received the degenerate sequence (`M_p = 0` for `p > 0`)
    /// where a positive sequence is required.
    #[error("degenerate sequence not allowed here: {0}")]
    DegenerateSequence(String),
    /// Evaluation outside the representable quotient range.
    #[error("argument outside representable range: {0}")]
    RangeExceeded(String),
    /// Upper conjugate of sequences requires the divisor to relate to the
    /// numerator (`N ⪯ M` at minimum).
    #[error("divisor sequence is not subordinate: {0}")]
    NotSubordinate(String),
    /// Upper-conjugate divisor must vanish at 0 for a weight-function result.
    #[error("divisor does not vanish at 0: {0}")]
    NonNormalizedDivisor(String),
    /// Negative argument where `t ≥ 0` is required.
    #[error("negative argument: {0}")]
    NegativeArgument(f64),
    /// Malformed expression or sequence file.
    #[error("parse error: {0}")]
    Parse(String),
    /// A constructed function fails the weight-function requirements
    /// (non-decreasing, divergent at +∞).
    #[error("not a weight function: {0}")]
    NotAWeightFunction(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
