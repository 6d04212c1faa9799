//! `ExactComplex`: finite sums `sum_j a_j * e(p_j)` with exact rational
//! amplitudes `a_j` and [`FormalScalar`] phases `p_j`, where
//! `e(t) = exp(2 pi i t)`.
//!
//! Values are kept canonical:
//!
//! * rational parts of phases are reduced mod 1;
//! * terms with equal phases are merged, zero amplitudes dropped;
//! * within each group of terms sharing the same irrational phase part, the
//!   rational offsets are rewritten in the basis `1, z, ..., z^(phi(Q)-1)` of
//!   `Q(z)`, `z = e(1/Q)`, `Q` the lcm of the offset denominators, by
//!   reduction mod the cyclotomic polynomial `Phi_Q`.
//!
//! The cyclotomic step makes the structural zero test complete for this
//! representation: a sum of root-of-unity multiples of `e(irr)` vanishes iff
//! its basis representation is empty, and terms with distinct irrational
//! parts can never cancel under the rational-independence assumption. Orders
//! `Q` beyond [`crate::CYCLOTOMIC_CAP`] skip the rewriting (merging only), so
//! callers keep a numeric fallback for zero tests; none of the shipped
//! computations get anywhere near the cap.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::scalars::formal::{FormalScalar, Instantiation, Rat};
use crate::util;
use crate::Result;

/// Exact complex value: a canonical multiset of `(phase, amplitude)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct ExactComplex {
    terms: BTreeMap<FormalScalar, Rat>,
}

impl ExactComplex {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn from_rat(a: Rat) -> Self {
        let mut out = ExactComplex::zero();
        out.push(FormalScalar::zero(), a);
        out.canonicalize();
        out
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    /// `e(phase)`.
    pub fn phase(p: &FormalScalar) -> Self {
        let mut out = ExactComplex::zero();
        out.push(p.clone(), Rat::one());
        out.canonicalize();
        out
    }

    /// Build from `(phase, amplitude)` pairs, canonicalizing once.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (FormalScalar, Rat)>) -> Self {
        let mut out = ExactComplex::zero();
        for (p, a) in pairs {
            out.push(p, a);
        }
        out.canonicalize();
        out
    }

    /// `re + i*im` for exact rationals (uses `i = e(1/4)`).
    pub fn from_re_im(re: Rat, im: Rat) -> Self {
        let mut out = ExactComplex::zero();
        out.push(FormalScalar::zero(), re);
        out.push(
            FormalScalar::from_rat(Rat::new(BigInt::one(), BigInt::from(4))),
            im,
        );
        out.canonicalize();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FormalScalar, &Rat)> {
        self.terms.iter()
    }

    /// `Some(r)` iff the value is the plain rational `r`.
    pub fn as_rational(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (p, a) = self.terms.iter().next().unwrap();
                p.is_zero().then(|| a.clone())
            }
            _ => None,
        }
    }

    fn push(&mut self, phase: FormalScalar, amp: Rat) {
        if amp.is_zero() {
            return;
        }
        let mut phase = phase.reduce_mod_one();
        let mut amp = amp;
        // Orders q = 2 (mod 4) are redundant: e(j/q) = -e(j/q - 1/2) lands
        // in the field of order q/2. Rewriting here keeps every stored
        // denominator != 2 (mod 4), which makes the cyclotomic basis below
        // canonical across arrival orders.
        let two_adic = (phase.rational_part().denom() % BigInt::from(4)).to_u64();
        if two_adic == Some(2) {
            let half = Rat::new(BigInt::one(), BigInt::from(2));
            phase = (&phase + &FormalScalar::from_rat(-half)).reduce_mod_one();
            amp = -amp;
        }
        let entry = self.terms.entry(phase).or_insert_with(Rat::zero);
        *entry += amp;
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, a) in &other.terms {
            out.push(p.clone(), a.clone());
        }
        out.canonicalize();
        out
    }

    pub fn neg(&self) -> Self {
        ExactComplex {
            terms: self.terms.iter().map(|(p, a)| (p.clone(), -a)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = ExactComplex::zero();
        for (p1, a1) in &self.terms {
            for (p2, a2) in &other.terms {
                out.push(p1 + p2, a1 * a2);
            }
        }
        out.canonicalize();
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return ExactComplex::zero();
        }
        ExactComplex {
            terms: self.terms.iter().map(|(p, a)| (p.clone(), a * c)).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        let mut out = ExactComplex::zero();
        for (p, a) in &self.terms {
            out.push(-p, a.clone());
        }
        out.canonicalize();
        out
    }

    /// `|self|^2 = self * conj(self)`, exact.
    pub fn norm_sq(&self) -> Self {
        self.mul(&self.conj())
    }

    /// Structural reality test: canonical form fixed by conjugation.
    pub fn is_real_structural(&self) -> bool {
        *self == self.conj()
    }

    /// Numeric value under an instantiation.
    pub fn eval(&self, inst: &Instantiation) -> Result<Complex64> {
        let mut acc = Complex64::ZERO;
        for (p, a) in &self.terms {
            let amp = a.to_f64().unwrap_or(f64::NAN);
            acc += util::e_unit(p.eval_mod_one(inst)?) * amp;
        }
        Ok(acc)
    }

    /// Zero test: structural first, numeric fallback at `tol` (reported so
    /// consumers can surface which test fired).
    pub fn zeroness(&self, inst: &Instantiation, tol: f64) -> Result<Zeroness> {
        if self.is_zero() {
            return Ok(Zeroness::Structural);
        }
        let v = self.eval(inst)?;
        let m = util::sqrt(v.norm_sqr());
        if m <= tol {
            Ok(Zeroness::Numeric(m))
        } else {
            Ok(Zeroness::NonZero(m))
        }
    }

    /// Rewrite into canonical form: within each group of terms sharing an
    /// irrational phase part, express the rational offsets in the power
    /// basis of the cyclotomic field of order `Q = lcm(denominators)` (with
    /// `Q != 2 (mod 4)` thanks to the rewriting in `push`). When the
    /// reduction shrinks the support into a smaller field the pass repeats;
    /// `Q` strictly decreases, so this terminates, and at a fixed `Q` the
    /// pass reproduces the unique power-basis coordinates, so the result is
    /// a fixpoint.
    fn canonicalize(&mut self) {
        loop {
            self.terms.retain(|_, a| !a.is_zero());
            if self.terms.is_empty() {
                return;
            }
            // Group by irrational phase part.
            let mut groups: BTreeMap<Vec<(String, Rat)>, Vec<(Rat, Rat)>> = BTreeMap::new();
            for (p, a) in &self.terms {
                let irr: Vec<(String, Rat)> = p
                    .irrational_parts()
                    .map(|(k, v)| (String::from(k), v.clone()))
                    .collect();
                groups
                    .entry(irr)
                    .or_default()
                    .push((p.rational_part().clone(), a.clone()));
            }
            let mut rebuilt = ExactComplex::zero();
            for (irr, offsets) in groups {
                let q = offsets
                    .iter()
                    .fold(BigInt::one(), |acc, (r, _)| acc.lcm(r.denom()));
                let reduced = if q <= BigInt::from(crate::CYCLOTOMIC_CAP) {
                    let q = q.to_u64().unwrap();
                    cyclotomic_reduce(q, &offsets)
                } else {
                    offsets
                };
                for (off, amp) in reduced {
                    let mut phase = FormalScalar::from_rat(off);
                    for (name, c) in &irr {
                        phase += &FormalScalar::symbol_scaled(name, c.clone());
                    }
                    rebuilt.push(phase, amp);
                }
            }
            rebuilt.terms.retain(|_, a| !a.is_zero());
            if rebuilt.terms == self.terms {
                return;
            }
            self.terms = rebuilt.terms;
        }
    }
}

/// Outcome of a zero test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Zeroness {
    /// Canonical form is empty: exactly zero.
    Structural,
    /// Nonempty canonical form, but numerically below tolerance.
    Numeric(f64),
    /// Numerically nonzero (modulus attached).
    NonZero(f64),
}

impl Zeroness {
    pub fn is_zero(&self) -> bool {
        !matches!(self, Zeroness::NonZero(_))
    }
}

/// Rewrite `sum a_j * e(r_j)` (rational `r_j` in `[0,1)` with lcm of
/// denominators `q`) in the power basis of `Q(e(1/q))` by reducing the
/// exponent polynomial mod `Phi_q`.
fn cyclotomic_reduce(q: u64, offsets: &[(Rat, Rat)]) -> Vec<(Rat, Rat)> {
    if q == 1 {
        let total = offsets.iter().fold(Rat::zero(), |acc, (_, a)| acc + a);
        return vec![(Rat::zero(), total)];
    }
    let mut dense = vec![Rat::zero(); q as usize];
    for (r, a) in offsets {
        let exp = (r * Rat::from_integer(BigInt::from(q)))
            .to_integer()
            .to_u64()
            .expect("offset in [0,1) times lcm of denominators");
        dense[exp as usize % q as usize] += a;
    }
    let phi = cyclotomic_poly(q);
    let deg = phi.len() - 1; // = euler_phi(q), phi is monic
    // Reduce exponents >= deg using x^deg = -(phi[0] + ... + phi[deg-1] x^(deg-1)).
    for e in (deg..q as usize).rev() {
        if dense[e].is_zero() {
            continue;
        }
        let c = core::mem::replace(&mut dense[e], Rat::zero());
        for (i, coeff) in phi[..deg].iter().enumerate() {
            if !coeff.is_zero() {
                let delta = &c * Rat::from_integer(coeff.clone());
                dense[e - deg + i] -= delta;
            }
        }
    }
    dense
        .into_iter()
        .take(deg)
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(e, a)| (Rat::new(BigInt::from(e), BigInt::from(q)), a))
        .collect()
}

/// Coefficients of the cyclotomic polynomial `Phi_n`, low degree first.
/// Computed by exact division of `x^n - 1` by the product of `Phi_d` over
/// proper divisors `d | n`.
pub fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    let mut cache: BTreeMap<u64, Vec<BigInt>> = BTreeMap::new();
    for d in util::divisors(n) {
        // x^d - 1
        let mut num = vec![BigInt::zero(); d as usize + 1];
        num[0] = -BigInt::one();
        num[d as usize] = BigInt::one();
        let mut quotient = num;
        for e in util::divisors(d) {
            if e == d {
                continue;
            }
            let phi_e = cache.get(&e).expect("divisors listed in increasing order");
            quotient = poly_exact_div(&quotient, phi_e);
        }
        cache.insert(d, quotient);
    }
    cache.remove(&n).unwrap()
}

/// Exact division of integer polynomials (low degree first); the divisor is
/// monic and divides exactly in all uses here.
fn poly_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    let nd = rem.len() - 1;
    if nd < dd {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if !c.is_zero() {
            quot[k] = c.clone();
            for (i, d) in den.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, a) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if p.is_zero() {
                if a.denom().is_one() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())?;
                }
            } else if a.is_one() {
                write!(f, "e({p})")?;
            } else if a.denom().is_one() {
                write!(f, "{}*e({p})", a.numer())?;
            } else {
                write!(f, "{}/{}*e({p})", a.numer(), a.denom())?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn e_of(num: i64, den: i64) -> ExactComplex {
        ExactComplex::phase(&FormalScalar::from_rat(rat(num, den)))
    }

    #[test]
    fn cyclotomic_polys_match_known_values() {
        assert_eq!(cyclotomic_poly(1), vec![BigInt::from(-1), BigInt::from(1)]);
        assert_eq!(cyclotomic_poly(2), vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(
            cyclotomic_poly(4),
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]
        );
        assert_eq!(
            cyclotomic_poly(6),
            vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]
        );
        assert_eq!(
            cyclotomic_poly(12),
            vec![
                BigInt::from(1),
                BigInt::from(0),
                BigInt::from(-1),
                BigInt::from(0),
                BigInt::from(1)
            ]
        );
    }

    #[test]
    fn full_period_sums_vanish_structurally() {
        for q in 2..12 {
            let mut acc = ExactComplex::zero();
            for j in 0..q {
                acc = acc.add(&e_of(j, q));
            }
            assert!(acc.is_zero(), "sum of all {q}-th roots of unity");
        }
    }

    #[test]
    fn i_arithmetic() {
        let i = ExactComplex::from_re_im(rat(0, 1), rat(1, 1));
        let m1 = i.mul(&i);
        assert_eq!(m1, ExactComplex::from_int(-1));
        assert_eq!(i.mul(&i.conj()), ExactComplex::one());
    }

    #[test]
    fn mixed_denominator_cancellation() {
        // e(1/4) + e(3/4) = 0.
        let v = e_of(1, 4).add(&e_of(3, 4));
        assert!(v.is_zero());
        // e(alpha) + e(alpha + 1/2) = 0.
        let alpha = FormalScalar::symbol("alpha");
        let shifted = &alpha + &FormalScalar::from_rat(rat(1, 2));
        let v = ExactComplex::phase(&alpha).add(&ExactComplex::phase(&shifted));
        assert!(v.is_zero());
    }

    #[test]
    fn canonicalization_is_idempotent_and_numerically_faithful() {
        let inst = Instantiation::standard();
        let cases = [
            e_of(1, 2),
            e_of(2, 3),
            e_of(5, 6).scale(&rat(3, 7)),
            e_of(1, 4).add(&e_of(1, 6)).add(&ExactComplex::from_rat(rat(-2, 5))),
            ExactComplex::phase(&FormalScalar::symbol("alpha")).mul(&e_of(1, 3)),
        ];
        for v in cases {
            let again = v.add(&ExactComplex::zero());
            assert_eq!(v, again, "canonical form must be stable");
            // The rewritten form evaluates to the same complex number.
            let direct = v.eval(&inst).unwrap();
            let re_route = v.mul(&ExactComplex::one()).eval(&inst).unwrap();
            assert!((direct - re_route).norm() < 1e-12);
        }
    }

    #[test]
    fn reality_detection() {
        let r = ExactComplex::from_rat(rat(3, 4));
        assert!(r.is_real_structural());
        let z = e_of(1, 3);
        assert!(!z.is_real_structural());
        assert!(z.norm_sq().is_real_structural());
        assert_eq!(z.norm_sq(), ExactComplex::one());
    }

    #[test]
    fn eval_matches_roots_of_unity() {
        let inst = Instantiation::standard();
        let v = e_of(1, 8).eval(&inst).unwrap();
        let expected = util::e_unit(0.125);
        assert!((v - expected).norm() < 1e-14);
    }
}
