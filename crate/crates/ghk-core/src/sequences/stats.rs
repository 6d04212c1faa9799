//! Equidistribution diagnostics: exponential sums, empirical distributions
//! with exact star discrepancy, divisibility densities, and Bohr recurrence
//! frequencies.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;
use crate::scalars::weyl::weyl_limit;
use crate::scalars::{ExactComplex, FormalScalar, IntPoly, Rat};
use crate::sequences::{FixedReal, IntegerSequence};
use crate::util;
use crate::Result;

/// A real multiplier `t` for phases `{a(n) * t}`: exact rational or
/// fixed-point real.
#[derive(Clone, Debug)]
pub enum PhaseFactor {
    Rational(Rat),
    Real(FixedReal),
}

impl PhaseFactor {
    /// `{v * t}` exactly.
    pub fn frac_times(&self, v: &BigInt) -> Rat {
        match self {
            PhaseFactor::Rational(r) => {
                let x = r * Rat::from_integer(v.clone());
                &x - x.floor()
            }
            PhaseFactor::Real(f) => f.frac_times(v),
        }
    }

    /// `{v * t}` as `f64` (fast path; exact reduction, one final rounding).
    pub fn frac_times_f64(&self, v: &BigInt) -> f64 {
        match self {
            PhaseFactor::Rational(r) => {
                let num = (r.numer() * v).mod_floor(r.denom());
                Rat::new(num, r.denom().clone()).to_f64().unwrap_or(f64::NAN)
            }
            PhaseFactor::Real(f) => f.frac_times_f64(v),
        }
    }
}

/// `E_{n in [N]} e(a(n) * t)`, the finite Weyl sum.
pub fn weyl_sum(seq: &IntegerSequence, t: &PhaseFactor, count: u64) -> Result<Complex64> {
    if count == 0 {
        return Err(Error::Precondition("empty Weyl sum".into()));
    }
    let mut acc = Complex64::ZERO;
    for n in 1..=count {
        let a = seq.eval(n)?;
        acc += util::e_unit(t.frac_times_f64(&BigInt::from(a)));
    }
    Ok(acc / count as f64)
}

/// Exact `N -> infinity` limit of the Weyl sum for a polynomial sequence and
/// a formal multiplier, via the Weyl criterion.
pub fn weyl_sum_symbolic(seq: &IntegerSequence, t: &FormalScalar) -> Result<ExactComplex> {
    let coeffs = seq.as_polynomial().ok_or_else(|| {
        Error::UnsupportedRepresentation(
            "symbolic Weyl sums require a polynomial sequence".into(),
        )
    })?;
    let phase = IntPoly::univariate("n", coeffs).scale_formal(t);
    weyl_limit(&phase)
}

/// What to apply to each sequence value before taking fractional parts.
#[derive(Clone, Debug)]
pub enum Transform {
    /// `{a(n) * t}`.
    Linear(PhaseFactor),
    /// `{a(n)^power * t}`.
    Power { power: u32, factor: PhaseFactor },
}

impl Transform {
    fn apply(&self, a: i64) -> Rat {
        match self {
            Transform::Linear(t) => t.frac_times(&BigInt::from(a)),
            Transform::Power { power, factor } => {
                factor.frac_times(&BigInt::from(a).pow(*power))
            }
        }
    }
}

/// Empirical distribution of `N` transformed values in `[0, 1)`.
#[derive(Clone, Debug)]
pub struct Distribution {
    /// Exact sorted samples (denominators from the transform arithmetic).
    pub samples: Vec<Rat>,
    /// Normalized bin frequencies over `[0,1)` split into equal bins.
    pub frequencies: Vec<f64>,
    /// Star discrepancy `D*_N`, computed exactly from the sorted sample and
    /// rounded once at the end.
    pub star_discrepancy: f64,
}

/// Histogram plus exact star discrepancy of `{transform(a(n))}`,
/// `n = 1..=count`.
pub fn empirical_distribution(
    seq: &IntegerSequence,
    transform: &Transform,
    count: u64,
    bins: usize,
) -> Result<Distribution> {
    if bins == 0 {
        return Err(Error::Precondition("bins must be >= 1".into()));
    }
    if count == 0 {
        return Ok(Distribution {
            samples: Vec::new(),
            frequencies: vec![0.0; bins],
            star_discrepancy: 1.0,
        });
    }
    let mut samples: Vec<Rat> = Vec::with_capacity(count as usize);
    for n in 1..=count {
        samples.push(transform.apply(seq.eval(n)?));
    }
    samples.sort_unstable();
    let mut counts = vec![0u64; bins];
    let bins_rat = Rat::from_integer(BigInt::from(bins as u64));
    for x in &samples {
        let idx = (x * &bins_rat).floor().to_integer().to_usize().unwrap_or(0);
        counts[idx.min(bins - 1)] += 1;
    }
    let frequencies = counts
        .iter()
        .map(|&c| c as f64 / count as f64)
        .collect();
    // D*_N = max_i max( i/N - x_(i), x_(i) - (i-1)/N ), exact arithmetic.
    let n_rat = Rat::from_integer(BigInt::from(count));
    let mut best = Rat::zero();
    for (i, x) in samples.iter().enumerate() {
        let hi = Rat::from_integer(BigInt::from(i as u64 + 1)) / &n_rat - x;
        let lo = x - Rat::from_integer(BigInt::from(i as u64)) / &n_rat;
        if hi > best {
            best = hi;
        }
        if lo > best {
            best = lo;
        }
    }
    Ok(Distribution {
        samples,
        frequencies,
        star_discrepancy: best.to_f64().unwrap_or(f64::NAN),
    })
}

/// Exact fraction of samples lying in `[lo, hi]` (closed) or `[lo, hi)`.
pub fn mass_in(samples: &[Rat], lo: &Rat, hi: &Rat, closed_right: bool) -> Rat {
    if samples.is_empty() {
        return Rat::one();
    }
    let count = samples
        .iter()
        .filter(|x| *x >= lo && if closed_right { *x <= hi } else { *x < hi })
        .count();
    Rat::new(BigInt::from(count), BigInt::from(samples.len()))
}

/// `|{n <= N : r divides a(n)}| / N`.
pub fn divisibility_density(seq: &IntegerSequence, r: u64, count: u64) -> Result<f64> {
    if r == 0 || count == 0 {
        return Err(Error::Precondition(
            "divisor and sample count must be >= 1".into(),
        ));
    }
    let mut hits = 0u64;
    for n in 1..=count {
        if seq.eval(n)?.rem_euclid(r as i64) == 0 {
            hits += 1;
        }
    }
    Ok(hits as f64 / count as f64)
}

/// `|{n <= N : ||a(n) * alpha||_{T^d} <= eps}| / N`, where the torus norm is
/// the sum over coordinates of the distance to the nearest integer.
pub fn bohr_recurrence_density(
    seq: &IntegerSequence,
    alphas: &[FixedReal],
    eps: f64,
    count: u64,
) -> Result<f64> {
    if eps <= 0.0 {
        return Err(Error::Precondition("eps must be positive".into()));
    }
    if alphas.is_empty() || count == 0 {
        return Err(Error::Precondition(
            "need at least one coordinate and one sample".into(),
        ));
    }
    let mut hits = 0u64;
    for n in 1..=count {
        let a = BigInt::from(seq.eval(n)?);
        let mut dist = 0.0f64;
        for alpha in alphas {
            let f = alpha.frac_times_f64(&a);
            dist += f.min(1.0 - f);
        }
        if dist <= eps {
            hits += 1;
        }
    }
    Ok(hits as f64 / count as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;
    use crate::sequences::fixed::default_alpha;

    #[test]
    fn alternating_weyl_sum_cancels() {
        // a(n) = n, t = 1/2, N even: phases alternate +-1.
        let seq = IntegerSequence::identity();
        let t = PhaseFactor::Rational(rat(1, 2));
        let v = weyl_sum(&seq, &t, 1000).unwrap();
        assert!(v.norm() < 1e-12);
        // a(n) = 2n, t = 1/2: all phases are integers.
        let even = IntegerSequence::polynomial(&[0, 2]);
        let v = weyl_sum(&even, &t, 777).unwrap();
        assert!((v - Complex64::ONE).norm() < 1e-12);
    }

    #[test]
    fn symbolic_weyl_sum_for_squares() {
        let seq = IntegerSequence::polynomial(&[0, 0, 1]);
        let v = weyl_sum_symbolic(&seq, &FormalScalar::symbol("alpha")).unwrap();
        assert!(v.is_zero());
        // rational multiplier: exact period sum, e.g. t = 1/2 on n^2:
        // phases n^2/2 have period 2 with values 0, 1/2 -> mean 0.
        let v = weyl_sum_symbolic(&seq, &FormalScalar::from_rat(rat(1, 2))).unwrap();
        assert!(v.is_zero());
        // t = 1/3 on n^2: residues 0,1,1 -> (1 + 2 e(1/3))/3.
        let v = weyl_sum_symbolic(&seq, &FormalScalar::from_rat(rat(1, 3))).unwrap();
        assert!(!v.is_zero());
    }

    #[test]
    fn halves_distribution() {
        let seq = IntegerSequence::identity();
        let d = empirical_distribution(
            &seq,
            &Transform::Linear(PhaseFactor::Rational(rat(1, 2))),
            1000,
            4,
        )
        .unwrap();
        assert!((d.frequencies[0] - 0.5).abs() < 1e-12);
        assert!((d.frequencies[2] - 0.5).abs() < 1e-12);
        assert!(d.frequencies[1].abs() < 1e-12);
    }

    #[test]
    fn low_discrepancy_of_irrational_rotation() {
        // {n * (sqrt(2)-1)} is a classical low-discrepancy sequence.
        let seq = IntegerSequence::identity();
        let d = empirical_distribution(
            &seq,
            &Transform::Linear(PhaseFactor::Real(default_alpha())),
            100_000,
            10,
        )
        .unwrap();
        assert!(d.star_discrepancy < 0.01, "D* = {}", d.star_discrepancy);
        // lower bound for the star discrepancy of any N points
        assert!(d.star_discrepancy >= 1.0 / (2.0 * 100_000.0));
    }

    #[test]
    fn divisibility_densities() {
        let seq = IntegerSequence::identity();
        assert!((divisibility_density(&seq, 3, 300).unwrap() - 1.0 / 3.0).abs() < 1e-12);
        // n^2 - n is always even
        let pron = IntegerSequence::polynomial(&[0, -1, 1]);
        assert!((divisibility_density(&pron, 2, 500).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bohr_recurrence_frequencies() {
        let seq = IntegerSequence::identity();
        // alpha = 0: always recurrent
        let zero = FixedReal::from_rational(&Rat::zero());
        assert!(
            (bohr_recurrence_density(&seq, &[zero], 0.01, 100).unwrap() - 1.0).abs() < 1e-15
        );
        // alpha = 1/2, eps = 0.1: even n only
        let half = FixedReal::from_rational(&rat(1, 2));
        let d = bohr_recurrence_density(&seq, &[half], 0.1, 100).unwrap();
        assert!((d - 0.5).abs() < 1e-12);
    }

    #[test]
    fn mass_counts_exactly() {
        let samples = alloc::vec![rat(0, 1), rat(1, 4), rat(1, 3), rat(1, 2)];
        assert_eq!(mass_in(&samples, &rat(0, 1), &rat(1, 3), true), rat(3, 4));
        assert_eq!(mass_in(&samples, &rat(0, 1), &rat(1, 3), false), rat(1, 2));
    }
}
