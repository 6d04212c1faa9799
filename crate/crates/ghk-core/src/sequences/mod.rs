//! Integer sequence families and their equidistribution / divisibility /
//! recurrence statistics.
//!
//! Numeric irrationals on this side are *plain reals*, not formal symbols:
//! sequences only ever feed finite averages and counts. They are stored in
//! 128-bit fixed point ([`FixedReal`]) so that fractional parts
//! `{a(n) * alpha}` stay exact even for `a(n)` around `10^15`, where `f64`
//! arithmetic would lose the fractional part entirely.

mod fixed;
mod seq;
mod stats;

pub use fixed::{default_alpha, FixedReal};
pub use seq::{EnumerationSeq, IntegerSequence};
pub use stats::{
    bohr_recurrence_density, divisibility_density, empirical_distribution, mass_in, weyl_sum,
    weyl_sum_symbolic, Distribution, PhaseFactor, Transform,
};
