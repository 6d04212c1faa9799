//! 128-bit fixed-point reals for exact fractional-part arithmetic.

use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::Error;
use crate::scalars::{parse_rat, Rat};
use crate::Result;

const BITS: u32 = 128;

fn modulus() -> BigInt {
    BigInt::from(1) << BITS
}

/// A real number stored as `floor(x * 2^128)`.
///
/// `frac_times` computes `{n * x}` exactly as a rational with denominator
/// `2^128`; the result differs from the true `{n * x}` by at most
/// `|n| * 2^-128`, negligible for every `|n|` reachable here. What matters
/// for the counterexample scenarios is *consistency*: every membership test
/// and histogram uses the same fixed-point value, so exact-mass checks are
/// exact.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FixedReal {
    scaled: BigInt,
}

impl FixedReal {
    /// `sqrt(k) - m`, computed by an exact integer square root.
    pub fn sqrt_minus(k: u64, m: i64) -> Self {
        let scaled_sq = BigInt::from(k) << (2 * BITS);
        let root = scaled_sq.sqrt(); // floor(sqrt(k) * 2^128)
        FixedReal {
            scaled: root - (BigInt::from(m) << BITS),
        }
    }

    /// Rational embedded on the `2^-128` grid (rounded down).
    pub fn from_rational(r: &Rat) -> Self {
        FixedReal {
            scaled: (r * Rat::from_integer(modulus())).floor().to_integer(),
        }
    }

    /// Parse `sqrt(k)-m`, `sqrt(k)`, or a rational/decimal literal.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Precondition(alloc::format!("malformed real literal `{s}`"));
        if let Some(rest) = t.strip_prefix("sqrt(") {
            let (k_str, tail) = rest.split_once(')').ok_or_else(bad)?;
            let k: u64 = k_str.trim().parse().map_err(|_| bad())?;
            let tail = tail.trim();
            let m: i64 = if tail.is_empty() {
                0
            } else if let Some(m_str) = tail.strip_prefix('-') {
                m_str.trim().parse().map_err(|_| bad())?
            } else if let Some(m_str) = tail.strip_prefix('+') {
                let v: i64 = m_str.trim().parse().map_err(|_| bad())?;
                -v
            } else {
                return Err(bad());
            };
            return Ok(Self::sqrt_minus(k, m));
        }
        Ok(Self::from_rational(&parse_rat(t)?))
    }

    /// `r * x` on the fixed-point grid (rounded down).
    pub fn scale_rat(&self, r: &Rat) -> Self {
        FixedReal {
            scaled: (Rat::from_integer(self.scaled.clone()) * r).floor().to_integer(),
        }
    }

    /// `{n * x}` as an exact rational in `[0, 1)` with denominator `2^128`.
    pub fn frac_times(&self, n: &BigInt) -> Rat {
        let m = modulus();
        let mut rem = (&self.scaled * n) % &m;
        if rem.is_negative() {
            rem += &m;
        }
        Rat::new(rem, m)
    }

    /// `{n * x}` as `f64`, skipping the rational wrapper (exact to one part
    /// in `2^75` after the double rounding; the hot path for statistics).
    pub fn frac_times_f64(&self, n: &BigInt) -> f64 {
        let m = modulus();
        let mut rem = (&self.scaled * n) % &m;
        if rem.is_negative() {
            rem += &m;
        }
        rem.to_f64().unwrap_or(f64::NAN) / 340282366920938463463374607431768211456.0
    }

    pub fn to_f64(&self) -> f64 {
        self.scaled.to_f64().unwrap_or(f64::NAN) / 340282366920938463463374607431768211456.0
    }
}

impl fmt::Display for FixedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.12}", self.to_f64())
    }
}

/// The default numeric irrational: `sqrt(2) - 1`.
pub fn default_alpha() -> FixedReal {
    FixedReal::sqrt_minus(2, 1)
}
