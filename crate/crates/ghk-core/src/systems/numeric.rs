//! Trigonometric polynomials with `f64` amplitudes: the truncated-average
//! backend for affine systems, with formal irrationals instantiated.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Error;
use crate::scalars::Instantiation;
use crate::systems::TrigPolynomial;
use crate::util;
use crate::Result;

/// `sum_k a_k chi_k` with complex double amplitudes.
#[derive(Clone, Debug, Default)]
pub struct NumericTrigPoly {
    dim: usize,
    terms: BTreeMap<Vec<i64>, Complex64>,
}

impl NumericTrigPoly {
    pub fn zero(dim: usize) -> Self {
        NumericTrigPoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Complex64::ONE)
    }

    pub fn constant(dim: usize, c: Complex64) -> Self {
        let mut out = Self::zero(dim);
        out.insert(vec![0; dim], c);
        out
    }

    pub fn character(dim: usize, freq: &[i64]) -> Self {
        assert_eq!(freq.len(), dim);
        let mut out = Self::zero(dim);
        out.insert(freq.to_vec(), Complex64::ONE);
        out
    }

    pub fn from_exact(f: &TrigPolynomial, inst: &Instantiation) -> Result<Self> {
        let mut out = Self::zero(f.dim());
        for (k, a) in f.terms() {
            out.insert(k.clone(), a.eval(inst)?);
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Complex64)> {
        self.terms.iter()
    }

    pub fn insert(&mut self, freq: Vec<i64>, amp: Complex64) {
        debug_assert_eq!(freq.len(), self.dim);
        if amp == Complex64::ZERO {
            return;
        }
        *self.terms.entry(freq).or_insert(Complex64::ZERO) += amp;
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(alloc::format!(
                "numeric trig dims {} vs {}",
                self.dim,
                other.dim
            )));
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &Self, c: Complex64) -> Result<()> {
        self.check_dim(other)?;
        for (k, a) in &other.terms {
            self.insert(k.clone(), a * c);
        }
        if self.terms.len() > crate::TERM_CAP {
            return Err(Error::ResourceCap {
                what: "numeric trig accumulation".into(),
                limit: crate::TERM_CAP as u64,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        if self.num_terms().saturating_mul(other.num_terms()) > crate::TERM_CAP {
            return Err(Error::ResourceCap {
                what: "numeric trig product".into(),
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
                out.insert(k, a1 * a2);
            }
        }
        Ok(out)
    }

    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (k, a) in &self.terms {
            out.insert(k.iter().map(|x| -x).collect(), a.conj());
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = Self::zero(self.dim);
        for (k, a) in &self.terms {
            out.insert(k.clone(), a * c);
        }
        out
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.dim + other.dim);
        for (k1, a1) in &self.terms {
            for (k2, a2) in &other.terms {
                let mut k = k1.clone();
                k.extend_from_slice(k2);
                out.insert(k, a1 * a2);
            }
        }
        out
    }

    pub fn integral(&self) -> Complex64 {
        self.terms
            .get(&vec![0i64; self.dim])
            .copied()
            .unwrap_or(Complex64::ZERO)
    }

    /// Parseval: exact in the frequencies, so no gridding error.
    pub fn l2_norm(&self) -> f64 {
        let mut acc = 0.0;
        for a in self.terms.values() {
            acc += a.norm_sqr();
        }
        util::sqrt(acc)
    }

    pub fn l2_distance(&self, other: &Self) -> Result<f64> {
        self.check_dim(other)?;
        let freqs: BTreeSet<&Vec<i64>> = self.terms.keys().chain(other.terms.keys()).collect();
        let mut acc = 0.0;
        for k in freqs {
            let a = self.terms.get(k).copied().unwrap_or(Complex64::ZERO);
            let b = other.terms.get(k).copied().unwrap_or(Complex64::ZERO);
            acc += (a - b).norm_sqr();
        }
        Ok(util::sqrt(acc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parseval_norms() {
        let mut f = NumericTrigPoly::zero(1);
        f.insert(vec![2], Complex64::new(0.6, 0.0));
        f.insert(vec![-1], Complex64::new(0.0, 0.8));
        assert!((f.l2_norm() - 1.0).abs() < 1e-12);
        assert!((f.mul(&f.conj()).unwrap().integral().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn products_convolve_frequencies() {
        let a = NumericTrigPoly::character(1, &[1]);
        let b = NumericTrigPoly::character(1, &[2]);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.terms().next().unwrap().0, &vec![3]);
    }
}
