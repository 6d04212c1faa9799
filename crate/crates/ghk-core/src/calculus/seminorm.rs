//! Gowers-Host-Kra seminorms: exact on finite systems, exact symbolic on
//! affine unipotent systems, truncated numeric on both.

use alloc::collections::BTreeSet;
use alloc::string::String;

use num_complex::Complex64;

use crate::calculus::derivative::{difference_vars, mult_derivative_symbolic};
use crate::error::Error;
use crate::scalars::{ExactComplex, Instantiation};
use crate::systems::{
    AffineSystem, Census, CyclicFunction, FiniteSystem, NumericAffineSystem, NumericTrigPoly,
    SymbolicFunction, TrigPolynomial,
};
use crate::util;
use crate::Result;

/// Below this the `2^s`-th power is clamped to zero; anything more negative
/// is an internal inconsistency (the power is a limit of averages of
/// `|.|^2`-type quantities and must be real and non-negative).
pub const NEGATIVE_CLAMP: f64 = 1e-12;

/// Imaginary parts of symbolic powers beyond this fail the reality check.
pub const IMAG_TOL: f64 = 1e-9;

/// Evaluation mode for [`SeminormRequest`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeminormMode {
    /// Full-period averages on a finite system (exact limit).
    CyclicExact,
    /// Exact symbolic limit on an affine system.
    Symbolic,
    /// Truncated box average `[1, width]^s`.
    Truncated { width: usize },
}

/// A seminorm computation request (degree and mode); systems and functions
/// are supplied to the mode-specific entry points.
#[derive(Clone, Copy, Debug)]
pub struct SeminormRequest {
    pub degree: u32,
    pub mode: SeminormMode,
}

impl SeminormRequest {
    pub fn validate(&self) -> Result<()> {
        if self.degree > super::MAX_DEGREE {
            return Err(Error::Precondition(alloc::format!(
                "seminorm degree capped at {}",
                super::MAX_DEGREE
            )));
        }
        if let SeminormMode::Truncated { width } = self.mode {
            if width == 0 {
                return Err(Error::Precondition("truncation width must be >= 1".into()));
            }
        }
        Ok(())
    }
}

/// A computed seminorm value: the root, plus the `2^s`-th power it was taken
/// from.
#[derive(Clone, Debug)]
pub struct SeminormValue {
    pub value: f64,
    pub power: Complex64,
}

/// `[f]_s^(2^s)` on a finite system, averaging each differencing parameter
/// over one full period (exact; no truncation error). Degree 0 returns the
/// integral.
pub fn seminorm_power_finite(
    sys: &impl FiniteSystem,
    f: &CyclicFunction,
    degree: u32,
) -> Result<Complex64> {
    check_size(sys, f)?;
    Ok(power_rec(sys, f, degree, Range::Period(sys.period())))
}

/// `[f]_s` on a finite system. Degree 0 is `|integral(f)|`.
pub fn seminorm_finite(
    sys: &impl FiniteSystem,
    f: &CyclicFunction,
    degree: u32,
) -> Result<SeminormValue> {
    let power = seminorm_power_finite(sys, f, degree)?;
    Ok(finish_numeric(power, degree))
}

/// Truncated variant: parameters range over `[1, width]^s`.
pub fn seminorm_finite_truncated(
    sys: &impl FiniteSystem,
    f: &CyclicFunction,
    degree: u32,
    width: usize,
) -> Result<SeminormValue> {
    check_size(sys, f)?;
    let power = power_rec(sys, f, degree, Range::Box(width));
    Ok(finish_numeric(power, degree))
}

#[derive(Clone, Copy)]
enum Range {
    /// offsets 0..n (a full period)
    Period(usize),
    /// offsets 1..=n (a truncation box)
    Box(usize),
}

impl Range {
    fn len(&self) -> usize {
        match self {
            Range::Period(n) | Range::Box(n) => *n,
        }
    }
    fn offset(&self, i: usize) -> i64 {
        match self {
            Range::Period(_) => i as i64,
            Range::Box(_) => i as i64 + 1,
        }
    }
}

fn power_rec(sys: &impl FiniteSystem, f: &CyclicFunction, degree: u32, range: Range) -> Complex64 {
    if degree == 0 {
        return f.integral();
    }
    let n = range.len();
    let total = util::tree_sum(n, |i| {
        let h = range.offset(i);
        let d = f
            .mul(&f.iterate(sys, h).conj())
            .expect("lengths agree by construction");
        power_rec(sys, &d, degree - 1, range)
    });
    total / n as f64
}

fn finish_numeric(power: Complex64, degree: u32) -> SeminormValue {
    if degree == 0 {
        return SeminormValue {
            value: power.norm(),
            power,
        };
    }
    let re = if power.re < 0.0 && power.re > -NEGATIVE_CLAMP {
        0.0
    } else {
        power.re
    };
    SeminormValue {
        value: util::root_pow2(re.max(0.0), degree),
        power,
    }
}

fn check_size(sys: &impl FiniteSystem, f: &CyclicFunction) -> Result<()> {
    if sys.size() != f.len() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "system size {} vs function length {}",
            sys.size(),
            f.len()
        )));
    }
    Ok(())
}

/// Exact symbolic seminorm on an affine system.
#[derive(Clone, Debug)]
pub struct SymbolicSeminorm {
    /// The exact `2^s`-th power `[f]_s^(2^s)`.
    pub power: ExactComplex,
    /// The root, from a numeric evaluation of the exact power.
    pub value: f64,
    /// Which reality test accepted the power ("structural" or "numeric").
    pub reality: &'static str,
    /// Term bookkeeping of the exact limit.
    pub census: Census,
}

impl SymbolicSeminorm {
    /// True iff the power is a structural (exact) zero.
    pub fn is_exact_zero(&self) -> bool {
        self.power.is_zero()
    }
}

/// `[f]_s^(2^s)` as an exact symbolic scalar in any free outer variables of
/// `f` (free variables are treated as generic; see
/// [`crate::scalars::weyl::weyl_limit_partial`]). The differencing
/// parameters are fresh variables `<prefix>1..<prefix>s`.
pub fn seminorm_power_symbolic(
    sys: &AffineSystem,
    f: &SymbolicFunction,
    degree: u32,
    prefix: &str,
) -> Result<(SymbolicFunction, Census)> {
    if degree == 0 {
        let (integ, census) = f.integral_x();
        return Ok((integ, census));
    }
    let (names, polys) = difference_vars(prefix, degree as usize);
    let derived = mult_derivative_symbolic(sys, f, &polys)?;
    let (integ, mut census) = derived.integral_x();
    let vars: BTreeSet<String> = names.into_iter().collect();
    let (limited, c2) = integ.box_limit(&vars)?;
    census.merge(c2);
    Ok((limited, census))
}

/// Exact symbolic `[f]_s` of a concrete trig polynomial.
pub fn seminorm_symbolic(
    sys: &AffineSystem,
    f: &TrigPolynomial,
    degree: u32,
    inst: &Instantiation,
) -> Result<SymbolicSeminorm> {
    SeminormRequest {
        degree,
        mode: SeminormMode::Symbolic,
    }
    .validate()?;
    let sym = SymbolicFunction::from_trig(f);
    let (scalar, census) = seminorm_power_symbolic(sys, &sym, degree, "h")?;
    let power = scalar.to_scalar()?;
    let (value, reality) = power_root(&power, degree, inst)?;
    Ok(SymbolicSeminorm {
        power,
        value,
        reality,
        census,
    })
}

/// Root extraction with the reality/positivity checks: structural reality
/// first, then a numeric check at tolerance [`IMAG_TOL`]; real parts in
/// `[-NEGATIVE_CLAMP, 0]` clamp to zero, anything lower is an
/// inconsistency.
pub fn power_root(
    power: &ExactComplex,
    degree: u32,
    inst: &Instantiation,
) -> Result<(f64, &'static str)> {
    if power.is_zero() {
        return Ok((0.0, "structural"));
    }
    let v = power.eval(inst)?;
    let reality = if power.is_real_structural() {
        "structural"
    } else if v.im.abs() <= IMAG_TOL {
        "numeric"
    } else {
        return Err(Error::Inconsistency(alloc::format!(
            "seminorm power has imaginary part {} (> {IMAG_TOL})",
            v.im
        )));
    };
    if degree == 0 {
        return Ok((v.norm(), reality));
    }
    let re = if v.re < 0.0 {
        if v.re < -NEGATIVE_CLAMP {
            return Err(Error::Inconsistency(alloc::format!(
                "seminorm power has negative real part {}",
                v.re
            )));
        }
        0.0
    } else {
        v.re
    };
    Ok((util::root_pow2(re, degree), reality))
}

/// Truncated numeric seminorm on an affine system.
#[derive(Clone, Debug)]
pub struct TruncatedSeminorm {
    pub value: f64,
    pub power: Complex64,
}

/// `E_{h in [1,width]^s} integral(D_h f)` on the numeric affine backend,
/// with the root taken at the end.
pub fn seminorm_truncated_numeric(
    sys: &NumericAffineSystem,
    f: &NumericTrigPoly,
    degree: u32,
    width: usize,
) -> Result<TruncatedSeminorm> {
    SeminormRequest {
        degree,
        mode: SeminormMode::Truncated { width },
    }
    .validate()?;
    let power = power_rec_numeric(sys, f, degree, width)?;
    let v = finish_numeric(power, degree);
    Ok(TruncatedSeminorm {
        value: v.value,
        power,
    })
}

fn power_rec_numeric(
    sys: &NumericAffineSystem,
    f: &NumericTrigPoly,
    degree: u32,
    width: usize,
) -> Result<Complex64> {
    if degree == 0 {
        return Ok(f.integral());
    }
    let total = util::tree_fold(
        width,
        &|range: core::ops::Range<usize>| -> Result<Complex64> {
            let mut acc = Complex64::ZERO;
            for i in range {
                let h = i as i64 + 1;
                let d = f.mul(&sys.iterate(f, h)?.conj())?;
                acc += power_rec_numeric(sys, &d, degree - 1, width)?;
            }
            Ok(acc)
        },
        &|a, b| match (a, b) {
            (Ok(x), Ok(y)) => Ok(x + y),
            (Err(e), _) | (_, Err(e)) => Err(e),
        },
    )?;
    Ok(total / width as f64)
}
