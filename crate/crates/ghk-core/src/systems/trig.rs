//! Character sums on `T^d`, fully exact.
//!
//! [`TrigPolynomial`] is a finite sum `sum_k a_k * chi_k` with concrete
//! integer frequency vectors `k` and exact amplitudes. [`SymbolicFunction`]
//! generalizes both the frequency (an integer-valued polynomial vector in
//! outer variables like `n, h_1, m_2`) and a phase factor `e(p(vars))`; it is
//! what iterating a character by a *symbolic* exponent produces.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::error::Error;
use crate::scalars::weyl::{weyl_limit_partial, PartialWeyl};
use crate::scalars::{ExactComplex, Instantiation, IntPoly, PhasePoly};
use crate::util;
use crate::Result;

/// Exact trigonometric polynomial on `T^d`: frequency vector -> amplitude.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TrigPolynomial {
    dim: usize,
    terms: BTreeMap<Vec<i64>, ExactComplex>,
}

impl TrigPolynomial {
    pub fn zero(dim: usize) -> Self {
        TrigPolynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: ExactComplex) -> Self {
        let mut out = Self::zero(dim);
        out.insert(vec![0; dim], c);
        out
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, ExactComplex::one())
    }

    /// The character `chi_k(x) = e(k . x)`.
    pub fn character(dim: usize, freq: &[i64]) -> Self {
        assert_eq!(freq.len(), dim);
        let mut out = Self::zero(dim);
        out.insert(freq.to_vec(), ExactComplex::one());
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn insert(&mut self, freq: Vec<i64>, amp: ExactComplex) {
        debug_assert_eq!(freq.len(), self.dim);
        if amp.is_zero() {
            return;
        }
        match self.terms.entry(freq) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(amp);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&amp);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &ExactComplex)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (k, a) in &other.terms {
            out.insert(k.clone(), a.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ExactComplex) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        let mut out = Self::zero(self.dim);
        for (k, a) in &self.terms {
            out.insert(k.clone(), a.mul(c));
        }
        out
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(alloc::format!(
                "trig polynomial dims {} vs {}",
                self.dim,
                other.dim
            )));
        }
        Ok(())
    }

    /// Pointwise product (frequency convolution).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        if self.num_terms().saturating_mul(other.num_terms()) > crate::TERM_CAP {
            return Err(Error::ResourceCap {
                what: "trig polynomial product".into(),
                limit: crate::TERM_CAP as u64,
            });
        }
        let mut out = Self::zero(self.dim);
        for (k1, a1) in &self.terms {
            for (k2, a2) in &other.terms {
                let mut k = Vec::with_capacity(self.dim);
                for (x, y) in k1.iter().zip(k2) {
                    k.push(x.checked_add(*y).ok_or_else(|| {
                        Error::Overflow("frequency addition".into())
                    })?);
                }
                out.insert(k, a1.mul(a2));
            }
        }
        Ok(out)
    }

    /// Complex conjugate: frequencies negate, amplitudes conjugate.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (k, a) in &self.terms {
            out.insert(k.iter().map(|x| -x).collect(), a.conj());
        }
        out
    }

    /// Tensor product on the product torus (frequency concatenation).
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.dim + other.dim);
        for (k1, a1) in &self.terms {
            for (k2, a2) in &other.terms {
                let mut k = k1.clone();
                k.extend_from_slice(k2);
                out.insert(k, a1.mul(a2));
            }
        }
        out
    }

    /// Haar integral: the amplitude of the zero frequency.
    pub fn integral(&self) -> ExactComplex {
        self.terms
            .get(&vec![0i64; self.dim])
            .cloned()
            .unwrap_or_else(ExactComplex::zero)
    }

    /// `L^2` norm via Parseval (exact frequencies, numeric amplitude moduli).
    pub fn l2_norm(&self, inst: &Instantiation) -> Result<f64> {
        let mut acc = 0.0;
        for a in self.terms.values() {
            acc += a.eval(inst)?.norm_sqr();
        }
        Ok(util::sqrt(acc))
    }

    pub fn l2_distance(&self, other: &Self, inst: &Instantiation) -> Result<f64> {
        self.check_dim(other)?;
        let mut acc = 0.0;
        let freqs: BTreeSet<&Vec<i64>> = self.terms.keys().chain(other.terms.keys()).collect();
        for k in freqs {
            let a = match self.terms.get(k) {
                Some(a) => a.eval(inst)?,
                None => Complex64::ZERO,
            };
            let b = match other.terms.get(k) {
                Some(b) => b.eval(inst)?,
                None => Complex64::ZERO,
            };
            acc += (a - b).norm_sqr();
        }
        Ok(util::sqrt(acc))
    }
}

/// One term of a [`SymbolicFunction`]: `coeff * e(phase(vars)) * chi_freq(vars)(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicTerm {
    pub freq: Vec<IntPoly>,
    pub phase: PhasePoly,
    pub coeff: ExactComplex,
}

/// A finite sum of character terms whose frequencies and phases are
/// polynomials in named outer integer variables. Canonical form: the phase
/// carries no constant term (constants are folded into the coefficient as
/// `e(c)`), and terms are merged on equal `(freq, phase)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymbolicFunction {
    dim: usize,
    terms: BTreeMap<(Vec<IntPoly>, PhasePoly), ExactComplex>,
}

impl SymbolicFunction {
    pub fn zero(dim: usize) -> Self {
        SymbolicFunction {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, ExactComplex::one())
    }

    pub fn constant(dim: usize, c: ExactComplex) -> Self {
        let mut out = Self::zero(dim);
        out.insert(vec![IntPoly::zero(); dim], PhasePoly::zero(), c);
        out
    }

    /// A scalar-valued symbolic expression (`dim = 0` function of the outer
    /// variables only).
    pub fn scalar(c: ExactComplex) -> Self {
        Self::constant(0, c)
    }

    pub fn from_trig(f: &TrigPolynomial) -> Self {
        let mut out = Self::zero(f.dim());
        for (k, a) in f.terms() {
            let freq = k.iter().map(|&x| IntPoly::from_int(x)).collect();
            out.insert(freq, PhasePoly::zero(), a.clone());
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = SymbolicTerm> + '_ {
        self.terms.iter().map(|((freq, phase), coeff)| SymbolicTerm {
            freq: freq.clone(),
            phase: phase.clone(),
            coeff: coeff.clone(),
        })
    }

    /// Insert with canonicalization (constant phase folded into coefficient).
    pub fn insert(&mut self, freq: Vec<IntPoly>, phase: PhasePoly, coeff: ExactComplex) {
        debug_assert_eq!(freq.len(), self.dim);
        if coeff.is_zero() {
            return;
        }
        let (c, rest) = phase.split_constant();
        let coeff = if c.is_zero() {
            coeff
        } else {
            coeff.mul(&ExactComplex::phase(&c))
        };
        let key = (freq, rest);
        match self.terms.entry(key) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(alloc::format!(
                "symbolic function dims {} vs {}",
                self.dim,
                other.dim
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for t in other.terms() {
            out.insert(t.freq, t.phase, t.coeff);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ExactComplex) -> Self {
        let mut out = Self::zero(self.dim);
        for t in self.terms() {
            out.insert(t.freq, t.phase, t.coeff.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        if self.num_terms().saturating_mul(other.num_terms()) > crate::TERM_CAP {
            return Err(Error::ResourceCap {
                what: "symbolic function product".into(),
                limit: crate::TERM_CAP as u64,
            });
        }
        let mut out = Self::zero(self.dim);
        for ((k1, p1), c1) in &self.terms {
            for ((k2, p2), c2) in &other.terms {
                let freq = k1.iter().zip(k2).map(|(a, b)| a.add(b)).collect();
                out.insert(freq, p1.add(p2), c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for t in self.terms() {
            out.insert(
                t.freq.iter().map(|p| p.neg()).collect(),
                t.phase.neg(),
                t.coeff.conj(),
            );
        }
        out
    }

    /// Tensor product on the product torus.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.num_terms().saturating_mul(other.num_terms()) > crate::TERM_CAP {
            return Err(Error::ResourceCap {
                what: "symbolic tensor".into(),
                limit: crate::TERM_CAP as u64,
            });
        }
        let mut out = Self::zero(self.dim + other.dim);
        for ((k1, p1), c1) in &self.terms {
            for ((k2, p2), c2) in &other.terms {
                let mut freq = k1.clone();
                freq.extend(k2.iter().cloned());
                out.insert(freq, p1.add(p2), c1.mul(c2));
            }
        }
        Ok(out)
    }

    /// Convert to a concrete trig polynomial; requires every frequency entry
    /// constant (integer) and every phase empty.
    pub fn to_trig(&self) -> Result<TrigPolynomial> {
        let mut out = TrigPolynomial::zero(self.dim);
        for ((freq, phase), coeff) in &self.terms {
            if !phase.is_zero() {
                return Err(Error::UnsupportedRepresentation(
                    "symbolic phase left; not a concrete trig polynomial".into(),
                ));
            }
            let mut k = Vec::with_capacity(self.dim);
            for p in freq {
                let c = p.as_constant().ok_or_else(|| {
                    Error::UnsupportedRepresentation(
                        "variable frequency left; not a concrete trig polynomial".into(),
                    )
                })?;
                if !c.denom().to_u32().map(|d| d == 1).unwrap_or(false) {
                    return Err(Error::Inconsistency(
                        "non-integer constant frequency".into(),
                    ));
                }
                k.push(c.numer().to_i64().ok_or_else(|| {
                    Error::Overflow("frequency exceeds i64".into())
                })?);
            }
            out.insert(k, coeff.clone());
        }
        Ok(out)
    }

    /// The scalar value of a `dim = 0`, variable-free symbolic function.
    pub fn to_scalar(&self) -> Result<ExactComplex> {
        let mut acc = ExactComplex::zero();
        for ((_, phase), coeff) in &self.terms {
            if !phase.is_zero() {
                return Err(Error::UnsupportedRepresentation(
                    "free variables left in symbolic scalar".into(),
                ));
            }
            acc = acc.add(coeff);
        }
        Ok(acc)
    }

    /// Keep only the zero-frequency terms: the Haar integral in `x`, still a
    /// function of the outer variables. Frequencies that are nonzero
    /// polynomials integrate to zero pointwise (constant nonzero case) or on
    /// all but a vanishing-density set of the outer box (variable case);
    /// both are recorded in the census.
    pub fn integral_x(&self) -> (SymbolicFunction, Census) {
        let mut out = SymbolicFunction::zero(0);
        let mut census = Census::default();
        for ((freq, phase), coeff) in &self.terms {
            if freq.iter().all(|p| p.is_zero()) {
                census.kept += 1;
                census.records.push(TermFate {
                    freq: freq.clone(),
                    fate: Fate::Kept,
                });
                out.insert(Vec::new(), phase.clone(), coeff.clone());
            } else {
                let var_dependent = freq.iter().any(|p| !p.vars().is_empty());
                let fate = if var_dependent {
                    census.dropped_variable_freq += 1;
                    Fate::DroppedVariableFrequency
                } else {
                    census.dropped_nonzero_freq += 1;
                    Fate::DroppedNonzeroFrequency
                };
                census.records.push(TermFate {
                    freq: freq.clone(),
                    fate,
                });
            }
        }
        (out, census)
    }

    /// Exact limit of the box average `E_{v in [H]^vars}` as `H -> infinity`:
    /// terms whose frequency depends on the averaged variables contribute 0
    /// in `L^2` (their box density vanishes); surviving phases are averaged
    /// by the Weyl rule. Remaining free variables are treated as generic.
    pub fn box_limit(&self, vars: &BTreeSet<String>) -> Result<(SymbolicFunction, Census)> {
        let mut out = SymbolicFunction::zero(self.dim);
        let mut census = Census::default();
        for ((freq, phase), coeff) in &self.terms {
            if freq.iter().any(|p| p.depends_on_any(vars)) {
                census.dropped_variable_freq += 1;
                census.records.push(TermFate {
                    freq: freq.clone(),
                    fate: Fate::DroppedVariableFrequency,
                });
                continue;
            }
            match weyl_limit_partial(phase, vars)? {
                PartialWeyl::Zero => {
                    census.dropped_weyl += 1;
                    census.records.push(TermFate {
                        freq: freq.clone(),
                        fate: Fate::DroppedWeyl,
                    });
                }
                PartialWeyl::Reduced { factor, rest } => {
                    census.kept += 1;
                    census.records.push(TermFate {
                        freq: freq.clone(),
                        fate: Fate::Kept,
                    });
                    out.insert(freq.clone(), rest, coeff.mul(&factor));
                }
            }
        }
        Ok((out, census))
    }

    /// Numeric evaluation at a concrete integer point of the outer variables,
    /// producing a numeric trig polynomial in `x`.
    pub fn eval_outer(
        &self,
        point: &BTreeMap<String, BigInt>,
        inst: &Instantiation,
    ) -> Result<super::NumericTrigPoly> {
        let mut out = super::NumericTrigPoly::zero(self.dim);
        for ((freq, phase), coeff) in &self.terms {
            let mut k = Vec::with_capacity(self.dim);
            for p in freq {
                let v = p.eval_integer_valued(point)?;
                k.push(v.to_i64().ok_or_else(|| {
                    Error::Overflow("frequency exceeds i64 at concrete point".into())
                })?);
            }
            let amp = coeff.eval(inst)? * util::e_unit(phase.eval_mod_one(point, inst)?);
            out.insert(k, amp);
        }
        Ok(out)
    }
}

/// What happened to each expansion term during an exact limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fate {
    Kept,
    /// Frequency depends on the averaged variables: zero box density.
    DroppedVariableFrequency,
    /// Constant nonzero frequency under an `x`-integral.
    DroppedNonzeroFrequency,
    /// Phase killed by the Weyl criterion (irrational non-constant part) or
    /// by an exactly vanishing root-of-unity period sum.
    DroppedWeyl,
}

/// Per-term record for census reporting.
#[derive(Clone, Debug)]
pub struct TermFate {
    pub freq: Vec<IntPoly>,
    pub fate: Fate,
}

/// Which discard mechanism fired for how many terms of an exact limit.
#[derive(Clone, Debug, Default)]
pub struct Census {
    pub kept: usize,
    pub dropped_variable_freq: usize,
    pub dropped_nonzero_freq: usize,
    pub dropped_weyl: usize,
    pub records: Vec<TermFate>,
}

impl Census {
    pub fn total(&self) -> usize {
        self.kept + self.dropped_variable_freq + self.dropped_nonzero_freq + self.dropped_weyl
    }

    pub fn merge(&mut self, other: Census) {
        self.kept += other.kept;
        self.dropped_variable_freq += other.dropped_variable_freq;
        self.dropped_nonzero_freq += other.dropped_nonzero_freq;
        self.dropped_weyl += other.dropped_weyl;
        self.records.extend(other.records);
    }
}
