//! Finite cyclic systems, finite products of them, and the complex vectors
//! they act on.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Error;
use crate::util;
use crate::Result;

/// The shift `x -> x + r (mod N)` on `Z_N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyclicSystem {
    modulus: usize,
    step: i64,
}

impl CyclicSystem {
    pub fn new(modulus: usize, step: i64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Precondition("cyclic modulus must be >= 1".into()));
        }
        let n = modulus as i64;
        Ok(CyclicSystem {
            modulus,
            step: step.rem_euclid(n),
        })
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn step(&self) -> i64 {
        self.step
    }

    /// Ergodic iff the orbit of 0 is everything.
    pub fn is_ergodic(&self) -> bool {
        util::gcd_u64(self.step.unsigned_abs(), self.modulus as u64) == 1
    }
}

/// Common interface of the finite backends: an index set of known size and
/// the index action of `T^n`.
pub trait FiniteSystem: Sync {
    fn size(&self) -> usize;

    /// A period of the iterate action: `T^(n + period) = T^n` for all `n`.
    fn period(&self) -> usize;

    /// Index of `T^n x`.
    fn shift(&self, x: usize, n: i64) -> usize;

    /// The permutation `x -> T^n x` as a lookup table.
    fn perm(&self, n: i64) -> Vec<usize> {
        (0..self.size()).map(|x| self.shift(x, n)).collect()
    }
}

impl FiniteSystem for CyclicSystem {
    fn size(&self) -> usize {
        self.modulus
    }

    fn period(&self) -> usize {
        self.modulus
    }

    fn shift(&self, x: usize, n: i64) -> usize {
        let m = self.modulus as i64;
        let offset = ((n as i128 * self.step as i128).rem_euclid(m as i128)) as i64;
        ((x as i64 + offset).rem_euclid(m)) as usize
    }
}

/// A finite product of cyclic systems, acting diagonally in each factor:
/// `T(x_1, ..., x_k) = (x_1 + r_1, ..., x_k + r_k)`. Indices are row-major
/// with the first factor slowest.
#[derive(Clone, Debug)]
pub struct CyclicProduct {
    factors: Vec<CyclicSystem>,
    size: usize,
}

impl CyclicProduct {
    pub fn new(factors: Vec<CyclicSystem>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Precondition("empty product system".into()));
        }
        if factors.len() > 8 {
            return Err(Error::Precondition("product rank capped at 8".into()));
        }
        let mut size = 1usize;
        for f in &factors {
            size = size
                .checked_mul(f.modulus())
                .ok_or_else(|| Error::Overflow("product system size".into()))?;
        }
        if size > (1 << 24) {
            return Err(Error::ResourceCap {
                what: "product system size".into(),
                limit: 1 << 24,
            });
        }
        Ok(CyclicProduct { factors, size })
    }

    /// `T x T` on `Z_N x Z_N`.
    pub fn square(sys: CyclicSystem) -> Result<Self> {
        Self::new(vec![sys, sys])
    }

    pub fn factors(&self) -> &[CyclicSystem] {
        &self.factors
    }
}

impl FiniteSystem for CyclicProduct {
    fn size(&self) -> usize {
        self.size
    }

    fn period(&self) -> usize {
        self.factors
            .iter()
            .fold(1u64, |acc, f| util::lcm_u64(acc, f.modulus() as u64)) as usize
    }

    fn shift(&self, x: usize, n: i64) -> usize {
        let mut rem = x;
        let mut coords = [0usize; 8];
        let k = self.factors.len();
        debug_assert!(k <= 8, "product rank bounded by construction");
        for i in (0..k).rev() {
            let m = self.factors[i].modulus();
            coords[i] = rem % m;
            rem /= m;
        }
        let mut out = 0usize;
        for i in 0..k {
            out = out * self.factors[i].modulus() + self.factors[i].shift(coords[i], n);
        }
        out
    }
}

/// A function on a finite system: one complex value per point.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclicFunction {
    pub values: Vec<Complex64>,
}

impl CyclicFunction {
    pub fn new(values: Vec<Complex64>) -> Self {
        CyclicFunction { values }
    }

    pub fn constant(sys: &impl FiniteSystem, v: Complex64) -> Self {
        CyclicFunction {
            values: vec![v; sys.size()],
        }
    }

    pub fn one(sys: &impl FiniteSystem) -> Self {
        Self::constant(sys, Complex64::ONE)
    }

    /// Indicator of a set of indices.
    pub fn indicator(sys: &impl FiniteSystem, set: &[usize]) -> Self {
        let mut values = vec![Complex64::ZERO; sys.size()];
        for &x in set {
            values[x] = Complex64::ONE;
        }
        CyclicFunction { values }
    }

    /// The character `x -> e(x xi / N)` on a plain cyclic system.
    pub fn character(sys: &CyclicSystem, xi: i64) -> Self {
        let n = sys.modulus();
        let values = (0..n)
            .map(|x| util::e_unit((x as i64 * xi) as f64 / n as f64))
            .collect();
        CyclicFunction { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(alloc::format!(
                "function lengths {} vs {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(CyclicFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    pub fn conj(&self) -> Self {
        CyclicFunction {
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        CyclicFunction {
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// Plain tensor `f ⊗ g` on the product system (outer product, row-major
    /// with `self` slowest). Conjugate explicitly for `f ⊗ conj(g)`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut values = Vec::with_capacity(self.len() * other.len());
        for a in &self.values {
            for b in &other.values {
                values.push(a * b);
            }
        }
        CyclicFunction { values }
    }

    /// `T^n f = f ∘ T^n`.
    pub fn iterate(&self, sys: &impl FiniteSystem, n: i64) -> Self {
        let perm = sys.perm(n);
        CyclicFunction {
            values: perm.iter().map(|&ix| self.values[ix]).collect(),
        }
    }

    /// Mean with respect to normalized counting measure.
    pub fn integral(&self) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for v in &self.values {
            acc += v;
        }
        acc / self.len() as f64
    }

    pub fn sup_norm(&self) -> f64 {
        self.values
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    /// `L^2` norm for the normalized counting measure.
    pub fn l2_norm(&self) -> f64 {
        let mut acc = 0.0;
        for v in &self.values {
            acc += v.norm_sqr();
        }
        util::sqrt(acc / self.len() as f64)
    }

    pub fn l2_distance(&self, other: &Self) -> Result<f64> {
        self.check_len(other)?;
        let mut acc = 0.0;
        for (a, b) in self.values.iter().zip(&other.values) {
            acc += (a - b).norm_sqr();
        }
        Ok(util::sqrt(acc / self.len() as f64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_composition() {
        let sys = CyclicSystem::new(8, 3).unwrap();
        let f = CyclicFunction::indicator(&sys, &[0]);
        for m in -5i64..6 {
            for n in -5i64..6 {
                let ab = f.iterate(&sys, n).iterate(&sys, m);
                let once = f.iterate(&sys, m + n);
                assert_eq!(ab, once);
            }
        }
    }

    #[test]
    fn koopman_convention() {
        // (T^n f)(x) = f(x + n r): the indicator of {0} on (Z_8, +1) pulled
        // back by T^3 is the indicator of {5}.
        let sys = CyclicSystem::new(8, 1).unwrap();
        let f = CyclicFunction::indicator(&sys, &[0]);
        let g = f.iterate(&sys, 3);
        let expected = CyclicFunction::indicator(&sys, &[5]);
        assert_eq!(g, expected);
    }

    #[test]
    fn integral_is_shift_invariant() {
        let sys = CyclicSystem::new(12, 5).unwrap();
        let f = CyclicFunction::character(&sys, 3);
        let a = f.integral();
        let b = f.iterate(&sys, 7).integral();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn character_mean() {
        // N = 4, f = (1, i, -1, -i) is the first character; mean 0.
        let sys = CyclicSystem::new(4, 1).unwrap();
        let f = CyclicFunction::character(&sys, 1);
        assert!((f.values[1] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!(f.integral().norm() < 1e-15);
        assert!((CyclicFunction::one(&sys).integral() - Complex64::ONE).norm() < 1e-15);
    }

    #[test]
    fn tensor_outer_product() {
        let sys = CyclicSystem::new(2, 1).unwrap();
        let f = CyclicFunction::new(vec![Complex64::ONE, -Complex64::ONE]);
        let t = f.tensor(&f);
        let expected = [1.0, -1.0, -1.0, 1.0];
        for (v, e) in t.values.iter().zip(expected) {
            assert!((v - Complex64::new(e, 0.0)).norm() < 1e-15);
        }
        let prod = CyclicProduct::square(sys).unwrap();
        assert_eq!(prod.size(), 4);
        // diagonal shift moves (x, y) -> (x+1, y+1): index 0 -> (1,1) = 3
        assert_eq!(prod.shift(0, 1), 3);
    }

    #[test]
    fn sup_norm_submultiplicative() {
        let sys = CyclicSystem::new(6, 1).unwrap();
        let f = CyclicFunction::character(&sys, 2).scale(Complex64::new(0.5, 0.25));
        let g = CyclicFunction::character(&sys, 3).scale(Complex64::new(-1.5, 0.5));
        let fg = f.mul(&g).unwrap();
        assert!(fg.sup_norm() <= f.sup_norm() * g.sup_norm() + 1e-12);
    }
}
