//! `FormalScalar`: elements of `Q + sum_i Q*alpha_i` for named formal
//! irrationals `alpha_i`, with exact arithmetic and a literal syntax.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::util;
use crate::Result;

/// Exact rational scalar.
pub type Rat = num_rational::BigRational;

/// An exact element of `Q + ⊕_i Q*alpha_i`.
///
/// Stored normalized: rationals in lowest terms (the `num` types maintain
/// that), no zero coefficients in `irrationals`. Equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FormalScalar {
    rational: Rat,
    irrationals: BTreeMap<String, Rat>,
}

impl FormalScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        FormalScalar {
            rational: r,
            irrationals: BTreeMap::new(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    /// The bare symbol `name` with coefficient 1.
    pub fn symbol(name: &str) -> Self {
        let mut irrationals = BTreeMap::new();
        irrationals.insert(name.to_string(), Rat::one());
        FormalScalar {
            rational: Rat::zero(),
            irrationals,
        }
    }

    /// `coeff * name`.
    pub fn symbol_scaled(name: &str, coeff: Rat) -> Self {
        let mut s = FormalScalar::zero();
        if !coeff.is_zero() {
            s.irrationals.insert(name.to_string(), coeff);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.irrationals.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.irrationals.is_empty()
    }

    pub fn rational_part(&self) -> &Rat {
        &self.rational
    }

    pub fn irrational_parts(&self) -> impl Iterator<Item = (&str, &Rat)> {
        self.irrationals.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// `Some(r)` iff the value is the rational `r`.
    pub fn as_rational(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.rational)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return FormalScalar::zero();
        }
        let mut irrationals = BTreeMap::new();
        for (k, v) in &self.irrationals {
            irrationals.insert(k.clone(), v * c);
        }
        FormalScalar {
            rational: &self.rational * c,
            irrationals,
        }
    }

    /// Exact product. Fails with [`Error::NonlinearScalarProduct`] when both
    /// operands have irrational parts: `alpha*beta` is not an element of the
    /// space, and the rational-independence assumption does not determine it.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.is_rational() {
            return Ok(other.scale(&self.rational));
        }
        if other.is_rational() {
            return Ok(self.scale(&other.rational));
        }
        Err(Error::NonlinearScalarProduct(alloc::format!(
            "({self}) * ({other})"
        )))
    }

    /// Reduce the rational part into `[0, 1)`; irrational coefficients are
    /// untouched. This is the right normalization for arguments of
    /// `e(t) = exp(2 pi i t)`.
    pub fn reduce_mod_one(&self) -> Self {
        let fl = self.rational.floor();
        FormalScalar {
            rational: &self.rational - fl,
            irrationals: self.irrationals.clone(),
        }
    }

    /// Numeric value under an instantiation of the symbols.
    pub fn eval(&self, inst: &Instantiation) -> Result<f64> {
        let mut v = rat_to_f64(&self.rational);
        for (name, c) in &self.irrationals {
            v += rat_to_f64(c) * inst.get(name)?;
        }
        Ok(v)
    }

    /// Numeric value mod 1, reducing the rational part exactly first so that
    /// huge rational parts do not cost float precision.
    pub fn eval_mod_one(&self, inst: &Instantiation) -> Result<f64> {
        self.reduce_mod_one().eval(inst).map(util::frac)
    }
}

pub(crate) fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl Add<&FormalScalar> for &FormalScalar {
    type Output = FormalScalar;
    fn add(self, rhs: &FormalScalar) -> FormalScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for FormalScalar {
    type Output = FormalScalar;
    fn add(mut self, rhs: FormalScalar) -> FormalScalar {
        self += &rhs;
        self
    }
}

impl Zero for FormalScalar {
    fn zero() -> Self {
        FormalScalar::default()
    }
    fn is_zero(&self) -> bool {
        FormalScalar::is_zero(self)
    }
}

impl AddAssign<&FormalScalar> for FormalScalar {
    fn add_assign(&mut self, rhs: &FormalScalar) {
        self.rational += &rhs.rational;
        for (k, v) in &rhs.irrationals {
            let entry = self.irrationals.entry(k.clone()).or_insert_with(Rat::zero);
            *entry += v;
            if entry.is_zero() {
                self.irrationals.remove(k);
            }
        }
    }
}

impl Neg for &FormalScalar {
    type Output = FormalScalar;
    fn neg(self) -> FormalScalar {
        FormalScalar {
            rational: -&self.rational,
            irrationals: self
                .irrationals
                .iter()
                .map(|(k, v)| (k.clone(), -v))
                .collect(),
        }
    }
}

impl Sub<&FormalScalar> for &FormalScalar {
    type Output = FormalScalar;
    fn sub(self, rhs: &FormalScalar) -> FormalScalar {
        self + &(-rhs)
    }
}

fn fmt_rat(r: &Rat, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for FormalScalar {
    /// Literal syntax, e.g. `1/3 + 2*alpha - beta`. Parses back exactly with
    /// [`FormalScalar::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.rational.is_zero() {
            fmt_rat(&self.rational, f)?;
            first = false;
        }
        for (name, c) in &self.irrationals {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !mag.is_one() {
                fmt_rat(&mag, f)?;
                write!(f, "*")?;
            }
            write!(f, "{name}")?;
        }
        Ok(())
    }
}

impl FormalScalar {
    /// Parse the literal syntax: terms joined by `+`/`-`, each term a
    /// rational (`2`, `-1/3`, `0.25`), a symbol, or `rational*symbol`.
    /// `symbols` is the set of declared symbol names; anything else errors.
    pub fn parse(input: &str, symbols: &[&str]) -> Result<Self> {
        let mut out = FormalScalar::zero();
        let s = input.trim();
        if s.is_empty() {
            return Err(Error::Precondition("empty scalar literal".into()));
        }
        let mut rest = s;
        let mut sign = Rat::one();
        let mut first = true;
        while !rest.is_empty() {
            rest = rest.trim_start();
            if !first || rest.starts_with('+') || rest.starts_with('-') {
                let (op, tail) = rest.split_at(1);
                sign = match op {
                    "+" => Rat::one(),
                    "-" => -Rat::one(),
                    _ => {
                        return Err(Error::Precondition(alloc::format!(
                            "expected `+` or `-` in scalar literal at `{rest}`"
                        )))
                    }
                };
                rest = tail.trim_start();
            }
            first = false;
            let end = rest
                .find(['+', '-'])
                .unwrap_or(rest.len());
            let term = rest[..end].trim();
            rest = &rest[end..];
            out += &parse_term(term, symbols, &sign)?;
        }
        Ok(out)
    }
}

fn parse_term(term: &str, symbols: &[&str], sign: &Rat) -> Result<FormalScalar> {
    if term.is_empty() {
        return Err(Error::Precondition("empty term in scalar literal".into()));
    }
    let (coeff_str, sym_str) = match term.split_once('*') {
        Some((c, s)) => (Some(c.trim()), Some(s.trim())),
        None => {
            if term.starts_with(|c: char| c.is_ascii_digit() || c == '.') {
                (Some(term), None)
            } else {
                (None, Some(term))
            }
        }
    };
    let coeff = match coeff_str {
        Some(c) => parse_rat(c)?,
        None => Rat::one(),
    };
    let coeff = coeff * sign;
    match sym_str {
        None => Ok(FormalScalar::from_rat(coeff)),
        Some(name) => {
            if !symbols.contains(&name) {
                return Err(Error::MissingSymbol(name.to_string()));
            }
            Ok(FormalScalar::symbol_scaled(name, coeff))
        }
    }
}

/// Parse `a`, `a/b`, or a decimal like `0.25` into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Precondition(alloc::format!("malformed rational `{s}`"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let int: BigInt = if int.is_empty() {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let num: BigInt = frac.parse().map_err(|_| bad())?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let negative = s.trim_start().starts_with('-');
        let frac_part = Rat::new(num, den);
        let int_part = Rat::from_integer(int);
        return Ok(if negative {
            int_part - frac_part
        } else {
            int_part + frac_part
        });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rat::from_integer(n))
}

/// Numeric values for the formal irrational symbols.
///
/// The standard instantiation maps the i-th symbol of `alpha, beta, gamma,
/// delta` to `sqrt(p_i) - 1` for `p_i = 2, 3, 5, 7`; these are jointly
/// rationally independent with 1, as the symbolic side assumes.
#[derive(Clone, Debug, Default)]
pub struct Instantiation {
    values: BTreeMap<String, f64>,
}

impl Instantiation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn standard() -> Self {
        let mut inst = Self::new();
        for (name, p) in [("alpha", 2.0), ("beta", 3.0), ("gamma", 5.0), ("delta", 7.0)] {
            inst.values.insert(name.to_string(), util::sqrt(p) - 1.0);
        }
        inst
    }

    /// Standard values for an explicit, ordered list of symbol names:
    /// the i-th name gets `sqrt(p_i) - 1` over the primes 2, 3, 5, ...
    pub fn standard_for(names: &[String]) -> Self {
        const PRIMES: [f64; 8] = [2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0];
        let mut inst = Self::new();
        for (i, name) in names.iter().enumerate() {
            let p = PRIMES[i % PRIMES.len()] * (1 + i / PRIMES.len()) as f64;
            inst.values.insert(name.clone(), util::sqrt(p) - 1.0);
        }
        inst
    }

    pub fn set(&mut self, name: &str, value: f64) {
        self.values.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Result<f64> {
        self.values
            .get(name)
            .copied()
            .ok_or_else(|| Error::MissingSymbol(name.to_string()))
    }

    pub fn names(&self) -> Vec<&str> {
        self.values.keys().map(|s| s.as_str()).collect()
    }
}
