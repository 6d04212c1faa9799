//! Measure-preserving system representations with closed-form iterates and
//! exact integration.
//!
//! Two backends:
//!
//! * finite: cyclic shifts on `Z_N` and finite products of them, acting on
//!   complex vectors ([`CyclicFunction`]);
//! * affine: unipotent affine maps `x -> Ax + b` on `T^d`, acting on finite
//!   character sums ([`TrigPolynomial`] exactly, [`NumericTrigPoly`] with
//!   instantiated irrationals, and [`SymbolicFunction`] when iterate counts
//!   are symbolic variables).
//!
//! Throughout, `T^n f` denotes the composition `f ∘ T^n` (the Koopman
//! action), on every backend.

mod affine;
mod cyclic;
mod numeric;
mod trig;

pub use affine::{AffineSystem, NumericAffineSystem};
pub use cyclic::{CyclicFunction, CyclicProduct, CyclicSystem, FiniteSystem};
pub use numeric::NumericTrigPoly;
pub use trig::{Census, Fate, SymbolicFunction, SymbolicTerm, TermFate, TrigPolynomial};
