//! Multiplicative derivatives `D_{h_1..h_t} f` on all backends.

use alloc::string::String;
use alloc::vec::Vec;

use crate::systems::{
    AffineSystem, CyclicFunction, FiniteSystem, NumericAffineSystem, NumericTrigPoly,
    SymbolicFunction, TrigPolynomial,
};
use crate::scalars::IntPoly;
use crate::Result;

/// `D_h f = f * T^h conj(f)` iterated over the entries of `hs`; `hs` empty
/// returns `f` itself.
pub fn mult_derivative_finite(
    sys: &impl FiniteSystem,
    f: &CyclicFunction,
    hs: &[i64],
) -> Result<CyclicFunction> {
    let mut g = f.clone();
    for &h in hs {
        let shifted = g.iterate(sys, h).conj();
        g = g.mul(&shifted)?;
    }
    Ok(g)
}

/// Exact affine backend with concrete differencing parameters.
pub fn mult_derivative_trig(
    sys: &AffineSystem,
    f: &TrigPolynomial,
    hs: &[i64],
) -> Result<TrigPolynomial> {
    let mut g = f.clone();
    for &h in hs {
        let shifted = sys.iterate(&g, h)?.conj();
        g = g.mul(&shifted)?;
    }
    Ok(g)
}

/// Numeric affine backend with concrete differencing parameters.
pub fn mult_derivative_numeric(
    sys: &NumericAffineSystem,
    f: &NumericTrigPoly,
    hs: &[i64],
) -> Result<NumericTrigPoly> {
    let mut g = f.clone();
    for &h in hs {
        let shifted = sys.iterate(&g, h)?.conj();
        g = g.mul(&shifted)?;
    }
    Ok(g)
}

/// Symbolic differencing parameters: each entry of `hs` is an integer-valued
/// polynomial in outer variables (usually a bare variable `h_j`).
pub fn mult_derivative_symbolic(
    sys: &AffineSystem,
    f: &SymbolicFunction,
    hs: &[IntPoly],
) -> Result<SymbolicFunction> {
    let mut g = f.clone();
    for h in hs {
        let shifted = sys.iterate_symbolic(&g, h)?.conj();
        g = g.mul(&shifted)?;
    }
    Ok(g)
}

/// Fresh variable names `prefix1, ..., prefixT` as polynomials.
pub fn difference_vars(prefix: &str, t: usize) -> (Vec<String>, Vec<IntPoly>) {
    let names: Vec<String> = (1..=t).map(|j| alloc::format!("{prefix}{j}")).collect();
    let polys = names.iter().map(|n| IntPoly::var(n)).collect();
    (names, polys)
}
