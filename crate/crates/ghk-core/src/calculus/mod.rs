//! Multiplicative derivatives, Gowers-Host-Kra seminorms, and dual
//! functions, on both backends.
//!
//! # Definitions computed here
//!
//! With `C` complex conjugation and `eps` ranging over `{0,1}^s`:
//!
//! ```text
//! D_h f        = f * T^h conj(f)
//! D_{h_1..h_s} = D_{h_1} ... D_{h_s} f = prod_eps C^|eps| T^{eps.h} f
//! [f]_0        = integral of f
//! [f]_s^(2^s)  = lim_H E_{h in [H]^s} integral of D_h f
//! Dual_s(f)    = lim_M E_{m in [M]^s} prod_{eps != 0} C^|eps| T^{eps.m} f
//! ```
//!
//! On finite systems the differencing parameters are averaged over one full
//! period of the iterate action instead of a box `[H]`; by periodicity this
//! equals the `H -> infinity` limit for every step, ergodic or not, so the
//! finite backend is exact. Truncated modes average over `[1, H]^s` and are
//! the numeric comparison point for the symbolic backend.
//!
//! Symbolically, expanding `D_h f` (or the dual product) over a character
//! sum leaves terms `coeff * e(p(h)) * chi_K(h)`; a term whose frequency
//! polynomial `K` is nonzero integrates (or, for duals, converges in `L^2`)
//! to zero off a vanishing-density set of the box — the level-set count of a
//! nonzero integer-valued polynomial in `s` variables over `[H]^s` is
//! `O(H^(s-1))` — and surviving phases are averaged exactly by the Weyl
//! rule. This frequency-drop plus Weyl-kill pair is the only mechanism by
//! which symbolic zeros arise.

mod derivative;
mod dual;
mod fourier;
mod seminorm;

pub use derivative::{
    mult_derivative_finite, mult_derivative_numeric, mult_derivative_symbolic,
    mult_derivative_trig,
};
pub use dual::{
    dual_finite, dual_pairing_finite, dual_symbolic, dual_symbolic_trig, dual_truncated_numeric,
    DualSymbolic,
};
pub use fourier::{dft, u2_via_fft};
pub use seminorm::{
    power_root, seminorm_finite, seminorm_finite_truncated, seminorm_power_finite,
    seminorm_power_symbolic, seminorm_symbolic, seminorm_truncated_numeric, SeminormMode,
    SeminormRequest, SeminormValue, SymbolicSeminorm, TruncatedSeminorm,
};

/// Resource guard shared by the seminorm/dual entry points.
pub const MAX_DEGREE: u32 = 6;
