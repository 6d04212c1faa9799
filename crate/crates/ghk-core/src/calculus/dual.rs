//! Dual functions `Dual_s(f) = lim_M E_{m in [M]^s} prod_{eps != 0}
//! C^|eps| T^{eps.m} f`.
//!
//! All three backends share the same recursion, from the factorization
//! `Dstar_{(m', m_s)} f = Dstar_{m'} f * T^{m_s} conj(D_{m'} f)` of the
//! starred product over the last coordinate.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::calculus::derivative::difference_vars;
use crate::error::Error;
use crate::systems::{
    AffineSystem, Census, CyclicFunction, FiniteSystem, NumericAffineSystem, NumericTrigPoly,
    SymbolicFunction, TrigPolynomial,
};
use crate::util;
use crate::Result;

/// Exact dual function on a finite system: every averaging parameter runs
/// over one full period.
pub fn dual_finite(
    sys: &impl FiniteSystem,
    f: &CyclicFunction,
    level: u32,
) -> Result<CyclicFunction> {
    if level == 0 {
        return Err(Error::Precondition("dual level must be >= 1".into()));
    }
    if level > super::MAX_DEGREE {
        return Err(Error::Precondition(alloc::format!(
            "dual level capped at {}",
            super::MAX_DEGREE
        )));
    }
    if sys.size() != f.len() {
        return Err(Error::DimensionMismatch(
            "system size vs function length".into(),
        ));
    }
    let p = sys.period();
    let n = f.len();
    // Outermost parameter parallelized; inner levels sequential.
    let sum = util::tree_sum_vec(p, n, |m1, acc| {
        let star = f.iterate(sys, m1 as i64).conj();
        let delta = f.mul(&star).expect("same length");
        dual_rec_finite(sys, &star, &delta, level - 1, acc);
    });
    let scale = 1.0 / util::pow_int(p as f64, level);
    Ok(CyclicFunction::new(
        sum.into_iter().map(|v| v * scale).collect(),
    ))
}

fn dual_rec_finite(
    sys: &impl FiniteSystem,
    star: &CyclicFunction,
    delta: &CyclicFunction,
    remaining: u32,
    acc: &mut Vec<Complex64>,
) {
    if remaining == 0 {
        for (a, v) in acc.iter_mut().zip(&star.values) {
            *a += v;
        }
        return;
    }
    let p = sys.period();
    for m in 0..p {
        let shifted = delta.iterate(sys, m as i64).conj();
        let star2 = star.mul(&shifted).expect("same length");
        if remaining == 1 {
            dual_rec_finite(sys, &star2, delta, 0, acc);
        } else {
            let delta2 = delta.mul(&shifted).expect("same length");
            dual_rec_finite(sys, &star2, &delta2, remaining - 1, acc);
        }
    }
}

/// Truncated numeric dual on an affine system: parameters over `[1, m]^s`.
pub fn dual_truncated_numeric(
    sys: &NumericAffineSystem,
    f: &NumericTrigPoly,
    level: u32,
    width: usize,
) -> Result<NumericTrigPoly> {
    if level == 0 || width == 0 {
        return Err(Error::Precondition(
            "dual level and truncation width must be >= 1".into(),
        ));
    }
    let mut acc = NumericTrigPoly::zero(f.dim());
    for m1 in 1..=width as i64 {
        let star = sys.iterate(f, m1)?.conj();
        let delta = f.mul(&star)?;
        dual_rec_numeric(sys, &star, &delta, level - 1, width, &mut acc)?;
    }
    let scale = 1.0 / util::pow_int(width as f64, level);
    Ok(acc.scale(Complex64::new(scale, 0.0)))
}

fn dual_rec_numeric(
    sys: &NumericAffineSystem,
    star: &NumericTrigPoly,
    delta: &NumericTrigPoly,
    remaining: u32,
    width: usize,
    acc: &mut NumericTrigPoly,
) -> Result<()> {
    if remaining == 0 {
        return acc.add_scaled(star, Complex64::ONE);
    }
    for m in 1..=width as i64 {
        let shifted = sys.iterate(delta, m)?.conj();
        let star2 = star.mul(&shifted)?;
        if remaining == 1 {
            dual_rec_numeric(sys, &star2, delta, 0, width, acc)?;
        } else {
            let delta2 = delta.mul(&shifted)?;
            dual_rec_numeric(sys, &star2, &delta2, remaining - 1, width, acc)?;
        }
    }
    Ok(())
}

/// Exact symbolic dual function.
#[derive(Clone, Debug)]
pub struct DualSymbolic {
    pub function: SymbolicFunction,
    pub census: Census,
}

/// Exact symbolic dual of a symbolic function (free outer variables allowed
/// and treated as generic). The averaging variables are `<prefix>1..s`.
pub fn dual_symbolic(
    sys: &AffineSystem,
    f: &SymbolicFunction,
    level: u32,
    prefix: &str,
) -> Result<DualSymbolic> {
    if level == 0 {
        return Err(Error::Precondition("dual level must be >= 1".into()));
    }
    let (names, polys) = difference_vars(prefix, level as usize);
    // Starred product prod_{eps != 0} C^|eps| T^{eps.m} f, built by the same
    // star/delta recursion as the finite backend.
    let mut star = sys.iterate_symbolic(f, &polys[0])?.conj();
    let mut delta = f.mul(&star)?;
    for p in &polys[1..] {
        let shifted = sys.iterate_symbolic(&delta, p)?.conj();
        star = star.mul(&shifted)?;
        delta = delta.mul(&shifted)?;
    }
    let vars: BTreeSet<String> = names.into_iter().collect();
    let (function, census) = star.box_limit(&vars)?;
    Ok(DualSymbolic { function, census })
}

/// Exact symbolic dual of a concrete trig polynomial, as a trig polynomial.
pub fn dual_symbolic_trig(
    sys: &AffineSystem,
    f: &TrigPolynomial,
    level: u32,
) -> Result<(TrigPolynomial, Census)> {
    let d = dual_symbolic(sys, &SymbolicFunction::from_trig(f), level, "m")?;
    Ok((d.function.to_trig()?, d.census))
}

/// Exact dual identity check helper: `integral(f * Dual_s f)` on a finite
/// system.
pub fn dual_pairing_finite(
    sys: &impl FiniteSystem,
    f: &CyclicFunction,
    level: u32,
) -> Result<Complex64> {
    let d = dual_finite(sys, f, level)?;
    Ok(f.mul(&d)?.integral())
}
