//! Crate-wide error type.
//!
//! Truncation is fail-safe by construction: any predicate whose answer would
//! depend on terms at or beyond an element's precision bound reports
//! `PrecisionExhausted` instead of guessing.

use crate::exponent::Exponent;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operands belong to different fields")]
    MixedFields,

    #[error("precision exhausted at O(t^{0})")]
    PrecisionExhausted(Exponent),

    #[error("element has negative value {0}, residue undefined")]
    NegativeValue(Exponent),

    #[error("not a p-th power: {0}")]
    NotAPthPower(String),

    #[error("Newton precondition v f(a0) > 2 v f'(a0) fails: {0}")]
    NewtonPreconditionFailed(String),

    #[error("value {0} not in the value group and auto-enlargement is disabled")]
    GroupTooSmall(Exponent),

    #[error("no slope/residual split found within recursion depth {depth}")]
    IrreducibleAtThisLevel { depth: usize },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("normalization step bound {0} exceeded without a monotone ladder pattern")]
    StepBoundExceeded(usize),

    #[error("target not realizable by the presentation: {0}")]
    TargetUnrealizable(String),

    #[error("valuation is trivial on F but an inseparability correction is required")]
    TrivialValuationNoCorrection,

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("parse error at position {pos}: {msg}")]
    ParseError { pos: usize, msg: String },

    #[error("unknown field descriptor `{0}`")]
    UnknownField(String),

    #[error("unsupported presentation: {0}")]
    UnsupportedPresentation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
