//! Affine unipotent torus systems `T x = A x + b` on `T^d`, with exact
//! closed-form iterates.
//!
//! With `N = A - I` nilpotent, iterates have the closed forms
//!
//! ```text
//! A^n     = sum_j C(n, j) N^j
//! T^n x   = A^n x + c(n),    c(n) = sum_i C(n, i+1) N^i b
//! ```
//!
//! valid for *all* integers `n` (generalized binomials), with degree bounded
//! by the nilpotency index. Characters pull back to characters:
//! `chi_k(T^n x) = e(k . c(n)) * chi_{k A^n}(x)` (row frequency vectors
//! acting on column points), so both `n` concrete and `n` a polynomial in
//! outer variables keep everything inside the exact representations.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::Error;
use crate::scalars::{binomial_poly, FormalScalar, Instantiation, IntPoly, PhasePoly, Rat};
use crate::systems::{NumericTrigPoly, SymbolicFunction, TrigPolynomial};
use crate::util;
use crate::Result;

const MAX_DIM: usize = 8;

/// `x -> A x + b` on `T^d`, `A` a unipotent integer matrix.
#[derive(Clone, Debug)]
pub struct AffineSystem {
    dim: usize,
    matrix: Vec<Vec<i64>>,
    translation: Vec<FormalScalar>,
    /// Powers of the nilpotent part: `nil[j] = (A - I)^j`, up to the first
    /// zero power.
    nil: Vec<Vec<Vec<i64>>>,
}

impl AffineSystem {
    pub fn new(matrix: Vec<Vec<i64>>, translation: Vec<FormalScalar>) -> Result<Self> {
        let dim = matrix.len();
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::Precondition(alloc::format!(
                "affine dimension must be in 1..={MAX_DIM}"
            )));
        }
        if matrix.iter().any(|row| row.len() != dim) || translation.len() != dim {
            return Err(Error::DimensionMismatch(
                "matrix must be d x d and translation length d".into(),
            ));
        }
        // nilpotent part and unipotence check: (A - I)^d = 0
        let mut n = matrix.clone();
        for (i, row) in n.iter_mut().enumerate() {
            row[i] -= 1;
        }
        let mut nil = vec![identity(dim), n.clone()];
        loop {
            let last = nil.last().unwrap();
            if is_zero_matrix(last) {
                nil.pop();
                break;
            }
            if nil.len() > dim {
                return Err(Error::Precondition(
                    "matrix is not unipotent: (A - I)^d != 0".into(),
                ));
            }
            let next = mat_mul(last, &n)?;
            nil.push(next);
        }
        Ok(AffineSystem {
            dim,
            matrix,
            translation,
            nil,
        })
    }

    /// The ergodic rotation `x -> x + (s_1, ..., s_d)` by formal irrationals.
    pub fn rotation(symbols: &[&str]) -> Result<Self> {
        let d = symbols.len();
        let b = symbols.iter().map(|s| FormalScalar::symbol(s)).collect();
        Self::new(identity(d), b)
    }

    /// The classical skew product `T(x1, x2) = (x1 + a, x2 + 2 x1 + a)` on
    /// `T^2`, with `a` the named formal irrational.
    pub fn skew_product(symbol: &str) -> Self {
        let a = FormalScalar::symbol(symbol);
        Self::new(vec![vec![1, 0], vec![2, 1]], vec![a.clone(), a])
            .expect("skew product matrix is unipotent")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn translation(&self) -> &[FormalScalar] {
        &self.translation
    }

    /// Index of nilpotency: smallest `j` with `(A - I)^j = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.nil.len()
    }

    /// Direct product, block diagonal.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let d = self.dim + other.dim;
        let mut m = vec![vec![0i64; d]; d];
        for i in 0..self.dim {
            m[i][..self.dim].copy_from_slice(&self.matrix[i]);
        }
        for i in 0..other.dim {
            m[self.dim + i][self.dim..].copy_from_slice(&other.matrix[i]);
        }
        let mut b = self.translation.clone();
        b.extend(other.translation.iter().cloned());
        Self::new(m, b)
    }

    /// Entries of `A^e` for a symbolic exponent `e` (an integer-valued
    /// polynomial in outer variables).
    pub fn power_poly(&self, e: &IntPoly) -> Vec<Vec<IntPoly>> {
        let mut out = vec![vec![IntPoly::zero(); self.dim]; self.dim];
        for (j, nj) in self.nil.iter().enumerate() {
            let binom = binomial_poly(e, j as u32);
            if binom.is_zero() {
                continue;
            }
            for r in 0..self.dim {
                for c in 0..self.dim {
                    if nj[r][c] != 0 {
                        let add = binom.scale(&Rat::from_integer(BigInt::from(nj[r][c])));
                        out[r][c] = out[r][c].add(&add);
                    }
                }
            }
        }
        out
    }

    /// Components of the translation cocycle `c(e)` for a symbolic exponent.
    pub fn translation_poly(&self, e: &IntPoly) -> Vec<PhasePoly> {
        let mut out = vec![PhasePoly::zero(); self.dim];
        for (i, ni) in self.nil.iter().enumerate() {
            let binom = binomial_poly(e, i as u32 + 1);
            if binom.is_zero() {
                continue;
            }
            // (A - I)^i b
            for r in 0..self.dim {
                let mut comp = FormalScalar::zero();
                for c in 0..self.dim {
                    if ni[r][c] != 0 {
                        comp += &self.translation[c]
                            .scale(&Rat::from_integer(BigInt::from(ni[r][c])));
                    }
                }
                if !comp.is_zero() {
                    out[r] = out[r].add(&binom.scale_formal(&comp));
                }
            }
        }
        out
    }

    /// `T^e f` for a symbolic exponent: each term's frequency maps to
    /// `k A^e` and its phase gains `k . c(e)`.
    pub fn iterate_symbolic(&self, f: &SymbolicFunction, e: &IntPoly) -> Result<SymbolicFunction> {
        if f.dim() != self.dim {
            return Err(Error::DimensionMismatch(
                "function dimension differs from system dimension".into(),
            ));
        }
        let power = self.power_poly(e);
        let cocycle = self.translation_poly(e);
        let mut out = SymbolicFunction::zero(self.dim);
        for t in f.terms() {
            // row vector times matrix
            let mut freq = vec![IntPoly::zero(); self.dim];
            for (c, slot) in freq.iter_mut().enumerate() {
                for (r, k_r) in t.freq.iter().enumerate() {
                    if !power[r][c].is_zero() && !k_r.is_zero() {
                        *slot = slot.add(&k_r.try_mul(&power[r][c])?);
                    }
                }
            }
            // phase gain k . c(e)
            let mut phase = t.phase.clone();
            for (r, k_r) in t.freq.iter().enumerate() {
                if !k_r.is_zero() && !cocycle[r].is_zero() {
                    phase = phase.add(&k_r.to_phase().try_mul(&cocycle[r])?);
                }
            }
            out.insert(freq, phase, t.coeff);
        }
        Ok(out)
    }

    /// `T^n f` for a concrete exponent, exactly.
    pub fn iterate(&self, f: &TrigPolynomial, n: i64) -> Result<TrigPolynomial> {
        if f.dim() != self.dim {
            return Err(Error::DimensionMismatch(
                "function dimension differs from system dimension".into(),
            ));
        }
        let power = self.power_concrete(n);
        let cocycle = self.translation_concrete(n);
        let mut out = TrigPolynomial::zero(self.dim);
        for (k, amp) in f.terms() {
            let mut freq = vec![BigInt::zero(); self.dim];
            for (c, slot) in freq.iter_mut().enumerate() {
                for (r, k_r) in k.iter().enumerate() {
                    if *k_r != 0 {
                        *slot += BigInt::from(*k_r) * &power[r][c];
                    }
                }
            }
            let freq: Vec<i64> = freq
                .into_iter()
                .map(|v| {
                    v.to_i64()
                        .ok_or_else(|| Error::Overflow("iterated frequency exceeds i64".into()))
                })
                .collect::<Result<_>>()?;
            let mut gain = FormalScalar::zero();
            for (r, k_r) in k.iter().enumerate() {
                if *k_r != 0 {
                    gain += &cocycle[r].scale(&Rat::from_integer(BigInt::from(*k_r)));
                }
            }
            out.insert(freq, amp.mul(&crate::scalars::ExactComplex::phase(&gain)));
        }
        Ok(out)
    }

    /// Entries of `A^n` for concrete `n`.
    pub fn power_concrete(&self, n: i64) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.dim]; self.dim];
        for (j, nj) in self.nil.iter().enumerate() {
            let b = util::binomial(n, j as u32);
            if b.is_zero() {
                continue;
            }
            for r in 0..self.dim {
                for c in 0..self.dim {
                    if nj[r][c] != 0 {
                        out[r][c] += &b * BigInt::from(nj[r][c]);
                    }
                }
            }
        }
        out
    }

    /// Components of `c(n)` for concrete `n`.
    pub fn translation_concrete(&self, n: i64) -> Vec<FormalScalar> {
        let mut out = vec![FormalScalar::zero(); self.dim];
        for (i, ni) in self.nil.iter().enumerate() {
            let b = util::binomial(n, i as u32 + 1);
            if b.is_zero() {
                continue;
            }
            let factor = Rat::from_integer(b);
            for r in 0..self.dim {
                for c in 0..self.dim {
                    if ni[r][c] != 0 {
                        out[r] += &self.translation[c]
                            .scale(&(&factor * Rat::from_integer(BigInt::from(ni[r][c]))));
                    }
                }
            }
        }
        out
    }

    /// Instantiate the formal translation numerically.
    pub fn instantiate(&self, inst: &Instantiation) -> Result<NumericAffineSystem> {
        let translation = self
            .translation
            .iter()
            .map(|s| s.eval(inst))
            .collect::<Result<Vec<f64>>>()?;
        Ok(NumericAffineSystem {
            dim: self.dim,
            nil: self.nil.clone(),
            translation,
        })
    }
}

/// The same system with the translation instantiated: the brute-force
/// (truncated-average) backend.
#[derive(Clone, Debug)]
pub struct NumericAffineSystem {
    dim: usize,
    nil: Vec<Vec<Vec<i64>>>,
    translation: Vec<f64>,
}

impl NumericAffineSystem {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `T^n f` numerically. Frequencies stay exact integers; the phase gain
    /// `k . c(n)` is accumulated in `f64` (magnitudes stay modest for the
    /// truncation ranges used here).
    pub fn iterate(&self, f: &NumericTrigPoly, n: i64) -> Result<NumericTrigPoly> {
        if f.dim() != self.dim {
            return Err(Error::DimensionMismatch(
                "function dimension differs from system dimension".into(),
            ));
        }
        // A^n entries in i128 with overflow checks
        let mut power = vec![vec![0i128; self.dim]; self.dim];
        for (j, nj) in self.nil.iter().enumerate() {
            let b = util::binomial(n, j as u32)
                .to_i128()
                .ok_or_else(|| Error::Overflow("binomial in iterate".into()))?;
            for r in 0..self.dim {
                for c in 0..self.dim {
                    power[r][c] += b * nj[r][c] as i128;
                }
            }
        }
        // c(n) components
        let mut cocycle = vec![0.0f64; self.dim];
        for (i, ni) in self.nil.iter().enumerate() {
            let b = util::binomial(n, i as u32 + 1)
                .to_f64()
                .unwrap_or(f64::NAN);
            for r in 0..self.dim {
                for c in 0..self.dim {
                    if ni[r][c] != 0 {
                        cocycle[r] += b * ni[r][c] as f64 * self.translation[c];
                    }
                }
            }
        }
        let mut out = NumericTrigPoly::zero(self.dim);
        for (k, amp) in f.terms() {
            let mut freq = Vec::with_capacity(self.dim);
            let mut phase = 0.0f64;
            for c in 0..self.dim {
                let mut v: i128 = 0;
                for (r, k_r) in k.iter().enumerate() {
                    v += *k_r as i128 * power[r][c];
                }
                freq.push(
                    i64::try_from(v)
                        .map_err(|_| Error::Overflow("iterated frequency exceeds i64".into()))?,
                );
            }
            for (r, k_r) in k.iter().enumerate() {
                phase += *k_r as f64 * cocycle[r];
            }
            out.insert(freq, amp * util::e_unit(phase));
        }
        Ok(out)
    }
}

fn identity(d: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; d]; d];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

fn is_zero_matrix(m: &[Vec<i64>]) -> bool {
    m.iter().all(|row| row.iter().all(|&x| x == 0))
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let d = a.len();
    let mut out = vec![vec![0i64; d]; d];
    for r in 0..d {
        for c in 0..d {
            let mut acc: i128 = 0;
            for k in 0..d {
                acc += a[r][k] as i128 * b[k][c] as i128;
            }
            out[r][c] = i64::try_from(acc)
                .map_err(|_| Error::Overflow("nilpotent power entries".into()))?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ExactComplex;
    use alloc::collections::BTreeSet;
    use alloc::string::String;

    #[test]
    fn non_unipotent_rejected() {
        let bad = AffineSystem::new(vec![vec![2, 0], vec![0, 1]], vec![
            FormalScalar::zero(),
            FormalScalar::zero(),
        ]);
        assert!(bad.is_err());
    }

    #[test]
    fn skew_product_character_pullback() {
        // T^n on e(l x2) gives phase l n^2 a and frequency (2 l n, l).
        let sys = AffineSystem::skew_product("alpha");
        let l = 3i64;
        let f = SymbolicFunction::from_trig(&TrigPolynomial::character(2, &[0, l]));
        let g = sys.iterate_symbolic(&f, &IntPoly::var("n")).unwrap();
        assert_eq!(g.num_terms(), 1);
        let term = g.terms().next().unwrap();
        let expected_freq0 = IntPoly::univariate("n", &[0, 2 * l]);
        let expected_freq1 = IntPoly::from_int(l);
        assert_eq!(term.freq[0], expected_freq0);
        assert_eq!(term.freq[1], expected_freq1);
        let expected_phase = IntPoly::univariate("n", &[0, 0, l])
            .scale_formal(&FormalScalar::symbol("alpha"));
        assert_eq!(term.phase, expected_phase);
    }

    #[test]
    fn concrete_iterate_matches_symbolic_at_points() {
        let sys = AffineSystem::skew_product("alpha");
        let f = TrigPolynomial::character(2, &[1, 2]);
        let sym = sys
            .iterate_symbolic(&SymbolicFunction::from_trig(&f), &IntPoly::var("n"))
            .unwrap();
        let inst = Instantiation::standard();
        for n in [-3i64, 0, 1, 5, 17] {
            let exact = sys.iterate(&f, n).unwrap();
            let mut point = alloc::collections::BTreeMap::new();
            point.insert(String::from("n"), BigInt::from(n));
            let from_sym = sym.eval_outer(&point, &inst).unwrap();
            let direct = NumericTrigPoly::from_exact(&exact, &inst).unwrap();
            assert!(from_sym.l2_distance(&direct).unwrap() < 1e-9);
        }
    }

    #[test]
    fn iterate_composes() {
        let sys = AffineSystem::skew_product("alpha");
        let f = TrigPolynomial::character(2, &[2, -1]);
        for (m, n) in [(1i64, 1i64), (3, 4), (-2, 5), (7, -7)] {
            let a = sys.iterate(&sys.iterate(&f, n).unwrap(), m).unwrap();
            let b = sys.iterate(&f, m + n).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn identity_function_is_fixed() {
        let sys = AffineSystem::skew_product("alpha");
        let one = TrigPolynomial::one(2);
        assert_eq!(sys.iterate(&one, 41).unwrap(), one);
    }

    #[test]
    fn integral_invariance_symbolically() {
        // integral(T^n f) = integral(f) for a character: both vanish unless
        // the frequency is 0, and frequency 0 is fixed by the pullback.
        let sys = AffineSystem::skew_product("alpha");
        let f = TrigPolynomial::character(2, &[0, 1]);
        let g = sys.iterate(&f, 9).unwrap();
        assert!(g.integral().is_zero());
        let c = TrigPolynomial::constant(2, ExactComplex::from_int(5));
        assert_eq!(sys.iterate(&c, 9).unwrap().integral(), c.integral());
    }

    #[test]
    fn rotation_part_pullback() {
        // On the skew product, e(x1) picks up phase n*alpha and keeps
        // frequency (1, 0).
        let sys = AffineSystem::skew_product("alpha");
        let f = SymbolicFunction::from_trig(&TrigPolynomial::character(2, &[1, 0]));
        let g = sys.iterate_symbolic(&f, &IntPoly::var("n")).unwrap();
        let t = g.terms().next().unwrap();
        assert_eq!(t.freq[0], IntPoly::from_int(1));
        assert_eq!(t.freq[1], IntPoly::zero());
        assert_eq!(
            t.phase,
            IntPoly::var("n").scale_formal(&FormalScalar::symbol("alpha"))
        );
        // box limit over n kills it (irrational coefficient)
        let vars: BTreeSet<String> = [String::from("n")].into();
        let (limit, census) = g.box_limit(&vars).unwrap();
        assert!(limit.is_zero());
        assert_eq!(census.dropped_weyl, 1);
    }

    #[test]
    fn product_system_blocks() {
        let sys = AffineSystem::skew_product("alpha");
        let rot = AffineSystem::rotation(&["beta"]).unwrap();
        let prod = sys.product(&rot).unwrap();
        assert_eq!(prod.dim(), 3);
        let f = TrigPolynomial::character(3, &[0, 1, 2]);
        let g = prod.iterate(&f, 2).unwrap();
        // frequency (0,1) maps to (2*1*2, 1) in the first block; 2 stays.
        let (k, _) = g.terms().next().unwrap();
        assert_eq!(k, &vec![4, 1, 2]);
    }
}
