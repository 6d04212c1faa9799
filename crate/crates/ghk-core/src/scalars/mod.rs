//! The exact scalar tower: rationals, formal irrationals, phase polynomials,
//! and exact complex values built from roots of unity and formal phases.
//!
//! # The rational-independence assumption
//!
//! Every named irrational symbol (`alpha`, `beta`, ...) is treated as a real
//! number such that the symbols **together with 1 are rationally
//! independent**: `q0 + q1*alpha + q2*beta + ... = 0` with rational `q_i`
//! forces every `q_i = 0`. All zero tests in the symbolic backend reduce to
//! this. The assumption matches the standing "alpha irrational" hypotheses of
//! the evaluated identities, and it is what makes [`weyl::weyl_limit`]
//! decidable. **Instantiating the symbols with rationally dependent values
//! (e.g. `alpha = 1/3`, or `beta = 2*alpha`) silently invalidates every
//! symbolic result.** The default instantiation `alpha -> sqrt(2)-1,
//! beta -> sqrt(3)-1, ...` is safe.
//!
//! Nothing is assumed about *products* of symbols: `alpha*alpha` may well be
//! rational (it is for `sqrt(2)`-like values), so products of two irrational
//! scalars are rejected rather than modeled.

mod exact;
mod formal;
mod poly;
pub mod weyl;

pub use exact::{ExactComplex, Zeroness};
pub use formal::{parse_rat, FormalScalar, Instantiation, Rat};
pub use poly::{binomial_poly, IntPoly, Mono, PhasePoly, Poly};

use num_bigint::BigInt;

/// Convenience: exact rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience: exact rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}
