//! Exact-arithmetic workbench for modules of small symmetric and alternating
//! groups: coefficient rings, permutation group enumeration, matrix
//! representations, the adjoint/trace operator calculus, a meataxe for
//! composition factors over finite fields, and a verification harness for
//! the minimal-dimension table and the recognition checks.
//!
//! Everything is exact: finite rings are packed into bytes, characteristic
//! zero runs on arbitrary-precision rationals. No floating point anywhere.

pub mod chop;
pub mod coeff;
pub mod decomp;
pub mod groups;
pub mod matrix;
pub mod repmod;
pub mod verify;

use thiserror::Error;

/// Error type shared across the workbench.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: bad parameters, mismatched rings or groups, bad pairings.
    #[error("input error: {0}")]
    Input(String),
    /// Division by a non-unit of the coefficient ring.
    #[error("non-unit: {0}")]
    NonUnit(String),
    /// An operation was invoked outside its stated hypotheses.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A configured size cap was exceeded.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// Generator images do not extend to a homomorphism.
    #[error("relation inconsistency at word {word}")]
    Inconsistent { word: String },
    /// Text-format parse failure.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// A randomized certification ran out of budget without an answer.
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

pub type Result<T> = std::result::Result<T, Error>;
