//! The integer sequence families: polynomial, floor-power, indicator-gated,
//! increasing enumerations of fractional-part level sets, and explicit
//! tables. Indices are 1-based throughout (`a(1)` is the first value).

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::Error;
use crate::scalars::Rat;
use crate::sequences::FixedReal;
use crate::Result;

/// `a: N -> Z` in one of the supported families.
#[derive(Clone, Debug)]
pub enum IntegerSequence {
    /// `a(n) = sum_i coeffs[i] * n^i`.
    Polynomial { coeffs: Vec<i64> },
    /// `a(n) = floor(n^(num/den))` for a positive rational exponent,
    /// evaluated exactly by integer root extraction (no floating floor, so
    /// no rounding at integer boundaries).
    FloorPower { num: u32, den: u32 },
    /// `a(n) = base(n) * 1[ {p(n) * alpha} in [lo, hi) ]`.
    Indicator {
        base: Box<IntegerSequence>,
        gate_poly: Vec<i64>,
        alpha: FixedReal,
        lo: Rat,
        hi: Rat,
    },
    /// Increasing enumeration of `{ n : {n^power * alpha} in [lo, hi] }`
    /// (closed interval), materialized up to a scan bound at construction.
    Enumeration(EnumerationSeq),
    /// Explicit finite table, 1-indexed.
    Table { values: Vec<i64> },
}

impl IntegerSequence {
    pub fn polynomial(coeffs: &[i64]) -> Self {
        IntegerSequence::Polynomial {
            coeffs: coeffs.to_vec(),
        }
    }

    /// `a(n) = n`.
    pub fn identity() -> Self {
        Self::polynomial(&[0, 1])
    }

    pub fn eval(&self, n: u64) -> Result<i64> {
        if n == 0 {
            return Err(Error::Precondition("sequences are 1-indexed".into()));
        }
        match self {
            IntegerSequence::Polynomial { coeffs } => eval_poly(coeffs, n as i64),
            IntegerSequence::FloorPower { num, den } => {
                if *num == 0 || *den == 0 {
                    return Err(Error::Precondition(
                        "floor-power exponent must be positive".into(),
                    ));
                }
                let p = BigInt::from(n).pow(*num);
                let root = p.nth_root(*den);
                root.to_i64()
                    .ok_or_else(|| Error::Overflow("floor-power value exceeds i64".into()))
            }
            IntegerSequence::Indicator {
                base,
                gate_poly,
                alpha,
                lo,
                hi,
            } => {
                let b = base.eval(n)?;
                let p = eval_poly(gate_poly, n as i64)?;
                let frac = alpha.frac_times(&BigInt::from(p));
                Ok(if &frac >= lo && &frac < hi { b } else { 0 })
            }
            IntegerSequence::Enumeration(e) => e.eval(n),
            IntegerSequence::Table { values } => values
                .get(n as usize - 1)
                .copied()
                .ok_or_else(|| Error::Precondition(alloc::format!(
                    "table sequence has {} entries, asked for n = {n}",
                    values.len()
                ))),
        }
    }

    pub fn eval_range(&self, count: u64) -> Result<Vec<i64>> {
        (1..=count).map(|n| self.eval(n)).collect()
    }

    /// The polynomial coefficients when this is the polynomial kind.
    pub fn as_polynomial(&self) -> Option<&[i64]> {
        match self {
            IntegerSequence::Polynomial { coeffs } => Some(coeffs),
            _ => None,
        }
    }
}

fn eval_poly(coeffs: &[i64], n: i64) -> Result<i64> {
    let mut acc: i128 = 0;
    for &c in coeffs.iter().rev() {
        acc = acc
            .checked_mul(n as i128)
            .and_then(|v| v.checked_add(c as i128))
            .ok_or_else(|| Error::Overflow("polynomial sequence value".into()))?;
    }
    i64::try_from(acc).map_err(|_| Error::Overflow("polynomial sequence value exceeds i64".into()))
}

/// Increasing enumeration of `{ n >= 1 : {n^power * alpha} in [lo, hi] }`.
#[derive(Clone, Debug)]
pub struct EnumerationSeq {
    power: u32,
    alpha: FixedReal,
    lo: Rat,
    hi: Rat,
    values: Vec<i64>,
}

impl EnumerationSeq {
    /// Scan candidates `n = 1, 2, ...` until `count` members are found;
    /// errors with [`Error::ScanExhausted`] if the scan bound is hit first.
    pub fn new(
        power: u32,
        alpha: FixedReal,
        lo: Rat,
        hi: Rat,
        count: usize,
        scan_bound: u64,
    ) -> Result<Self> {
        if power == 0 {
            return Err(Error::Precondition("enumeration power must be >= 1".into()));
        }
        let mut values = Vec::with_capacity(count);
        let mut n: u64 = 0;
        while values.len() < count {
            n += 1;
            if n > scan_bound {
                return Err(Error::ScanExhausted {
                    bound: scan_bound,
                    found: values.len(),
                });
            }
            let p = BigInt::from(n).pow(power);
            let frac = alpha.frac_times(&p);
            if frac >= lo && frac <= hi {
                values.push(n as i64);
            }
        }
        Ok(EnumerationSeq {
            power,
            alpha,
            lo,
            hi,
            values,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn eval(&self, n: u64) -> Result<i64> {
        self.values
            .get(n as usize - 1)
            .copied()
            .ok_or_else(|| Error::Precondition(alloc::format!(
                "enumeration materialized {} elements, asked for n = {n}",
                self.values.len()
            )))
    }

    /// Re-check that a value is a member of the defining set.
    pub fn verify_member(&self, value: i64) -> bool {
        if value < 1 {
            return false;
        }
        let p = BigInt::from(value).pow(self.power);
        let frac = self.alpha.frac_times(&p);
        frac >= self.lo && frac <= self.hi
    }
}
