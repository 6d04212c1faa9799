//! A two-backend laboratory for Gowers-Host-Kra seminorms, dual functions,
//! and multiple ergodic averages along integer sequences.
//!
//! Everything is computed on one of two kinds of measure-preserving systems:
//!
//! * **finite cyclic systems** `x -> x + r (mod N)` on `Z_N` (and finite
//!   products of those), where seminorms and averages are evaluated by brute
//!   force, exactly up to floating-point roundoff;
//! * **affine unipotent torus systems** `x -> Ax + b` on `T^d` with `A`
//!   unipotent, where characters pull back to characters with polynomial
//!   phases, so Cesàro limits of seminorms, dual functions, and averages
//!   along polynomial sequences can be evaluated *symbolically and exactly*.
//!
//! The symbolic side rests on a small exact tower: rationals, formal
//! irrationals (named symbols assumed rationally independent from each other
//! and from 1), multivariate phase polynomials over them, and exact complex
//! combinations of roots of unity (`e(q)`) and formal phases (`e(alpha)`).
//! Limits of box averages of `e(p(n_1, ..., n_k))` are evaluated by Weyl's
//! equidistribution criterion.
//!
//! The crate is `no_std`-compatible (with `alloc`); enable the `libm` feature
//! instead of `std` for float math in that configuration.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(feature = "std")]
extern crate std;

pub mod averages;
pub mod calculus;
pub mod error;
pub mod scalars;
pub mod scenarios;
pub mod sequences;
pub mod systems;
pub mod util;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;

/// Hard cap on the number of terms a symbolic or numeric trigonometric
/// polynomial may grow to before an operation aborts with
/// [`Error::ResourceCap`]. Products of `2^s`-fold multiplicative derivatives
/// grow multiplicatively, and it is better to fail fast than to thrash.
pub const TERM_CAP: usize = 1_000_000;

/// Cap on the number of lattice points summed when evaluating the rational
/// (periodic) part of a Weyl limit exactly.
pub const WEYL_PERIOD_CAP: u64 = 1 << 22;

/// Largest root-of-unity order for which exact cyclotomic canonicalization
/// is attempted; beyond this, terms are merged by equal phase only.
pub const CYCLOTOMIC_CAP: u64 = 4096;

/// Default scan bound for enumeration-defined sequences.
pub const ENUMERATION_SCAN_BOUND: u64 = 10_000_000;
