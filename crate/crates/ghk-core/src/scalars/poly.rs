//! Multivariate polynomials in named integer variables.
//!
//! Two instantiations are used throughout:
//!
//! * [`IntPoly`] — rational coefficients, used for iterate exponents and
//!   character frequencies. These arise from binomial expansions
//!   `C(n, j) = n(n-1)...(n-j+1)/j!`, so they are integer-valued on integer
//!   points even though their monomial coefficients are not integers.
//! * [`PhasePoly`] — [`FormalScalar`] coefficients, used for the arguments of
//!   `e(.)` in Cesàro limits.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::scalars::formal::{FormalScalar, Instantiation, Rat};
use crate::Result;

/// A monomial: variable name -> positive exponent.
pub type Mono = BTreeMap<String, u32>;

/// Coefficient ring interface for [`Poly`].
pub trait Coeff: Clone + Ord + Zero {
    fn add_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Product; may fail (irrational times irrational is not representable).
    fn try_mul_ref(&self, other: &Self) -> Result<Self>;
    fn scale_rat(&self, c: &Rat) -> Self;
}

impl Coeff for Rat {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn try_mul_ref(&self, other: &Self) -> Result<Self> {
        Ok(self * other)
    }
    fn scale_rat(&self, c: &Rat) -> Self {
        self * c
    }
}

impl Coeff for FormalScalar {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn try_mul_ref(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)
    }
    fn scale_rat(&self, c: &Rat) -> Self {
        self.scale(c)
    }
}

/// Sparse multivariate polynomial with canonical monomial order and no zero
/// coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly<C: Coeff> {
    terms: BTreeMap<Mono, C>,
}

pub type IntPoly = Poly<Rat>;
pub type PhasePoly = Poly<FormalScalar>;

impl<C: Coeff> Default for Poly<C> {
    fn default() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::new(), c);
        }
        Poly { terms }
    }

    /// The variable `name` with coefficient `c`.
    pub fn monomial(c: C, vars: &[(&str, u32)]) -> Self {
        let mut mono = Mono::new();
        for (v, e) in vars {
            if *e > 0 {
                *mono.entry(v.to_string()).or_insert(0) += e;
            }
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `Some(c)` iff the polynomial is the constant `c` (zero counts, as
    /// `C::zero()`).
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => {
                let (mono, c) = self.terms.iter().next().unwrap();
                mono.is_empty().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn constant_term(&self) -> C {
        self.terms.get(&Mono::new()).cloned().unwrap_or_else(C::zero)
    }

    /// All variables occurring with positive exponent.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for mono in self.terms.keys() {
            out.extend(mono.keys().cloned());
        }
        out
    }

    pub fn depends_on_any(&self, vars: &BTreeSet<String>) -> bool {
        self.terms
            .keys()
            .any(|mono| mono.keys().any(|v| vars.contains(v)))
    }

    pub fn insert_term(&mut self, mono: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add_ref(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.insert_term(mono.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg_ref()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, coeff)| (m.clone(), coeff.scale_rat(c)))
                .collect(),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut mono = m1.clone();
                for (v, e) in m2 {
                    *mono.entry(v.clone()).or_insert(0) += e;
                }
                out.insert_term(mono, c1.try_mul_ref(c2)?);
            }
        }
        Ok(out)
    }

    /// Evaluate at an integer point; variables not in `point` default to 0.
    pub fn eval_int(&self, point: &BTreeMap<String, BigInt>) -> C {
        let mut acc = C::zero();
        'terms: for (mono, c) in &self.terms {
            let mut factor = Rat::one();
            for (v, e) in mono {
                let Some(val) = point.get(v) else {
                    continue 'terms; // variable fixed to 0, monomial vanishes
                };
                if val.is_zero() {
                    continue 'terms;
                }
                factor *= Rat::from_integer(val.pow(*e));
            }
            acc = acc.add_ref(&c.scale_rat(&factor));
        }
        acc
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.values().sum::<u32>())
            .max()
            .unwrap_or(0)
    }
}

impl IntPoly {
    pub fn from_int(n: i64) -> Self {
        Self::constant(Rat::from_integer(BigInt::from(n)))
    }

    /// The single variable `name`.
    pub fn var(name: &str) -> Self {
        Self::monomial(Rat::one(), &[(name, 1)])
    }

    /// `sum coeffs[i] * var^i`.
    pub fn univariate(name: &str, coeffs: &[i64]) -> Self {
        let mut out = Self::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            out.insert_term(
                if i == 0 {
                    Mono::new()
                } else {
                    let mut m = Mono::new();
                    m.insert(name.to_string(), i as u32);
                    m
                },
                Rat::from_integer(BigInt::from(c)),
            );
        }
        out
    }

    /// Evaluate an integer-valued polynomial at an integer point; errors if
    /// the rational-arithmetic result is not an integer (which would indicate
    /// the polynomial was not integer-valued after all).
    pub fn eval_integer_valued(&self, point: &BTreeMap<String, BigInt>) -> Result<BigInt> {
        let v = self.eval_int(point);
        if v.denom().is_one() {
            Ok(v.numer().clone())
        } else {
            Err(Error::Inconsistency(alloc::format!(
                "expected integer value, got {v} from an integer-valued polynomial"
            )))
        }
    }

    /// Promote to a phase polynomial.
    pub fn to_phase(&self) -> PhasePoly {
        PhasePoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), FormalScalar::from_rat(c.clone())))
                .collect(),
        }
    }

    /// `self * scalar`, as a phase polynomial (total: one side is rational).
    pub fn scale_formal(&self, s: &FormalScalar) -> PhasePoly {
        let mut out = PhasePoly::zero();
        for (m, c) in &self.terms {
            out.insert_term(m.clone(), s.scale(c));
        }
        out
    }
}

impl PhasePoly {
    /// Split off the constant term: `(constant, rest)` with `rest` having no
    /// constant monomial.
    pub fn split_constant(&self) -> (FormalScalar, PhasePoly) {
        let c = self.constant_term();
        if c.is_zero() {
            return (c, self.clone());
        }
        let mut rest = self.clone();
        rest.terms.remove(&Mono::new());
        (c, rest)
    }

    /// Numeric evaluation at an integer point under an instantiation,
    /// reduced mod 1 (suitable as an argument to `e(.)`).
    pub fn eval_mod_one(
        &self,
        point: &BTreeMap<String, BigInt>,
        inst: &Instantiation,
    ) -> Result<f64> {
        let v = self.eval_int(point);
        v.eval_mod_one(inst)
    }

    /// Numeric evaluation with float variable values (for oracle-style
    /// truncation checks where exactness is not needed).
    pub fn eval_f64(&self, point: &BTreeMap<String, f64>, inst: &Instantiation) -> Result<f64> {
        let mut acc = 0.0;
        for (mono, c) in &self.terms {
            let mut factor = 1.0;
            for (v, e) in mono {
                let val = point.get(v).copied().unwrap_or(0.0);
                factor *= crate::util::pow_int(val, *e);
            }
            acc += c.eval(inst)? * factor;
        }
        Ok(acc)
    }
}

/// Generalized binomial `C(p, j) = p(p-1)...(p-j+1)/j!` of a polynomial.
/// Integer-valued whenever `p` is, and valid for negative values.
pub fn binomial_poly(p: &IntPoly, j: u32) -> IntPoly {
    let mut out = IntPoly::constant(Rat::one());
    for i in 0..j {
        let shifted = p.sub(&IntPoly::from_int(i as i64));
        out = out.try_mul(&shifted).expect("rational coefficients");
    }
    let mut fact = BigInt::one();
    for i in 2..=j as i64 {
        fact *= BigInt::from(i);
    }
    out.scale(&Rat::new(BigInt::one(), fact))
}

impl<C: Coeff + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (v, e) in mono {
                if *e == 1 {
                    write!(f, "*{v}")?;
                } else {
                    write!(f, "*{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}
