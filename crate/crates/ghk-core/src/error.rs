//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

/// Errors produced by the exact and brute-force evaluators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An operation was requested on a representation that cannot express it
    /// (e.g. a symbolic iterate of a finite cyclic system).
    UnsupportedRepresentation(String),
    /// A product of two formal scalars with irrational parts on both sides;
    /// the coefficient space `Q + sum Q*alpha_i` is only a Q-module, and the
    /// rational-independence assumption says nothing about `alpha_i*alpha_j`.
    NonlinearScalarProduct(String),
    /// A precondition on the inputs was violated.
    Precondition(String),
    /// A term-count or summation-size cap was exceeded.
    ResourceCap { what: String, limit: u64 },
    /// An enumeration scan ran out of candidates before producing enough
    /// sequence elements.
    ScanExhausted { bound: u64, found: usize },
    /// An exact computation produced a value that contradicts a theorem
    /// (e.g. a seminorm power with a substantially negative real part).
    Inconsistency(String),
    /// A partial Weyl average hit a rational, parameter-dependent coefficient
    /// pattern that has no single symbolic value (it would be periodic in the
    /// free variables).
    NonGenericAverage(String),
    /// Integer overflow while deriving frequencies or indices.
    Overflow(String),
    /// A formal irrational symbol had no numeric instantiation.
    MissingSymbol(String),
    /// An expected-values table lookup failed.
    MissingExpectation { scenario: String, check: String },
    /// Mismatched dimensions or lengths.
    DimensionMismatch(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnsupportedRepresentation(s) => write!(f, "unsupported representation: {s}"),
            Error::NonlinearScalarProduct(s) => {
                write!(f, "product of two irrational formal scalars: {s}")
            }
            Error::Precondition(s) => write!(f, "precondition violated: {s}"),
            Error::ResourceCap { what, limit } => {
                write!(f, "resource cap exceeded: {what} (limit {limit})")
            }
            Error::ScanExhausted { bound, found } => write!(
                f,
                "enumeration scan bound {bound} exhausted after {found} elements"
            ),
            Error::Inconsistency(s) => write!(f, "internal inconsistency: {s}"),
            Error::NonGenericAverage(s) => write!(f, "non-generic partial average: {s}"),
            Error::Overflow(s) => write!(f, "integer overflow: {s}"),
            Error::MissingSymbol(s) => write!(f, "no numeric value for symbol `{s}`"),
            Error::MissingExpectation { scenario, check } => {
                write!(f, "expected-values table has no entry for ({scenario}, {check})")
            }
            Error::DimensionMismatch(s) => write!(f, "dimension mismatch: {s}"),
        }
    }
}

impl core::error::Error for Error {}
