//! Multiple ergodic averages along sequences: finite, weighted, Følner-box,
//! cubic, and square forms, plus exact symbolic limits for polynomial
//! sequences on affine systems.
//!
//! Every finite average runs over `n in [1, N]` (or an explicit integer
//! box); the summation loops reduce through [`util::tree_fold`] so results
//! are bit-stable across thread counts.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::error::Error;
use crate::scalars::{IntPoly, Rat};
use crate::sequences::IntegerSequence;
use crate::systems::{
    AffineSystem, Census, CyclicFunction, FiniteSystem, NumericAffineSystem, NumericTrigPoly,
    SymbolicFunction, TrigPolynomial,
};
use crate::util;
use crate::Result;

/// Weights for a weighted average; `Table` entries pair with successive
/// index-set points (row-major for boxes).
#[derive(Clone, Debug)]
pub enum Weights {
    Unit,
    Table(Vec<Complex64>),
}

impl Weights {
    fn get(&self, i: usize) -> Complex64 {
        match self {
            Weights::Unit => Complex64::ONE,
            Weights::Table(w) => w[i],
        }
    }

    fn check_len(&self, need: usize) -> Result<()> {
        if let Weights::Table(w) = self {
            if w.len() < need {
                return Err(Error::Precondition(alloc::format!(
                    "weight table has {} entries, index set has {need}",
                    w.len()
                )));
            }
        }
        Ok(())
    }
}

/// An axis-aligned box in `Z^k`: `corner[i] <= v_i < corner[i] + sides[i]`.
#[derive(Clone, Debug)]
pub struct FolnerBox {
    pub corner: Vec<i64>,
    pub sides: Vec<usize>,
}

impl FolnerBox {
    /// The interval `[1, n]` as a 1-dimensional box.
    pub fn interval(n: usize) -> Self {
        FolnerBox {
            corner: vec![1],
            sides: vec![n],
        }
    }

    pub fn volume(&self) -> Result<usize> {
        if self.corner.len() != self.sides.len() || self.corner.is_empty() {
            return Err(Error::Precondition("malformed box".into()));
        }
        if self.sides.iter().any(|&s| s == 0) {
            return Err(Error::Precondition("box sides must be >= 1".into()));
        }
        let mut v = 1usize;
        for &s in &self.sides {
            v = v
                .checked_mul(s)
                .ok_or_else(|| Error::Overflow("box volume".into()))?;
        }
        Ok(v)
    }

    /// The lattice point with row-major index `i`.
    pub fn point(&self, mut i: usize) -> Vec<i64> {
        let mut out = vec![0i64; self.sides.len()];
        for j in (0..self.sides.len()).rev() {
            out[j] = self.corner[j] + (i % self.sides[j]) as i64;
            i /= self.sides[j];
        }
        out
    }

    /// Variable names `n1..nk` used by box sequences.
    pub fn var_names(&self) -> Vec<String> {
        (1..=self.sides.len())
            .map(|j| alloc::format!("n{j}"))
            .collect()
    }
}

/// `E_{n in [N]} w_n * prod_j T^{a_j(n)} f_j` on a finite system, plus its
/// `L^2` norm.
pub fn multiple_average_finite(
    sys: &impl FiniteSystem,
    items: &[(&IntegerSequence, &CyclicFunction)],
    count: u64,
    weights: &Weights,
) -> Result<(CyclicFunction, f64)> {
    if items.is_empty() || count == 0 {
        return Err(Error::Precondition(
            "need at least one factor and one sample".into(),
        ));
    }
    weights.check_len(count as usize)?;
    for (_, f) in items {
        if f.len() != sys.size() {
            return Err(Error::DimensionMismatch(
                "function length vs system size".into(),
            ));
        }
    }
    // Precompute iterate counts so the parallel loop is infallible.
    let mut shifts: Vec<Vec<i64>> = Vec::with_capacity(items.len());
    for (seq, _) in items {
        shifts.push((1..=count).map(|n| seq.eval(n)).collect::<Result<_>>()?);
    }
    let size = sys.size();
    let sum = util::tree_sum_vec(count as usize, size, |i, acc| {
        let w = weights.get(i);
        for (x, slot) in acc.iter_mut().enumerate() {
            let mut prod = w;
            for (j, (_, f)) in items.iter().enumerate() {
                prod *= f.values[sys.shift(x, shifts[j][i])];
            }
            *slot += prod;
        }
    });
    let avg = CyclicFunction::new(sum.into_iter().map(|v| v / count as f64).collect());
    let norm = avg.l2_norm();
    Ok((avg, norm))
}

/// Box form on a finite system: multivariate integer-polynomial sequences
/// (in the box variables `n1..nk`) over a Følner box.
pub fn multiple_average_box_finite(
    sys: &impl FiniteSystem,
    items: &[(&IntPoly, &CyclicFunction)],
    bx: &FolnerBox,
    weights: &Weights,
) -> Result<(CyclicFunction, f64)> {
    let volume = bx.volume()?;
    if items.is_empty() {
        return Err(Error::Precondition("need at least one factor".into()));
    }
    weights.check_len(volume)?;
    let names = bx.var_names();
    let mut shifts: Vec<Vec<i64>> = vec![Vec::with_capacity(volume); items.len()];
    for i in 0..volume {
        let pt = bx.point(i);
        let point: alloc::collections::BTreeMap<String, BigInt> = names
            .iter()
            .cloned()
            .zip(pt.iter().map(|&v| BigInt::from(v)))
            .collect();
        for (j, (poly, _)) in items.iter().enumerate() {
            let v = poly.eval_integer_valued(&point)?;
            shifts[j].push(
                i64::try_from(v)
                    .map_err(|_| Error::Overflow("box sequence value exceeds i64".into()))?,
            );
        }
    }
    let size = sys.size();
    let sum = util::tree_sum_vec(volume, size, |i, acc| {
        let w = weights.get(i);
        for (x, slot) in acc.iter_mut().enumerate() {
            let mut prod = w;
            for (j, (_, f)) in items.iter().enumerate() {
                prod *= f.values[sys.shift(x, shifts[j][i])];
            }
            *slot += prod;
        }
    });
    let avg = CyclicFunction::new(sum.into_iter().map(|v| v / volume as f64).collect());
    let norm = avg.l2_norm();
    Ok((avg, norm))
}

/// `E_{n in [N]} w_n * prod_j T^{a_j(n)} f_j` on the numeric affine backend.
pub fn multiple_average_numeric(
    sys: &NumericAffineSystem,
    items: &[(&IntegerSequence, &NumericTrigPoly)],
    count: u64,
    weights: &Weights,
) -> Result<(NumericTrigPoly, f64)> {
    if items.is_empty() || count == 0 {
        return Err(Error::Precondition(
            "need at least one factor and one sample".into(),
        ));
    }
    weights.check_len(count as usize)?;
    let dim = items[0].1.dim();
    let mut acc = NumericTrigPoly::zero(dim);
    for i in 0..count as usize {
        let n = i as u64 + 1;
        let mut prod = NumericTrigPoly::one(dim);
        for (seq, f) in items {
            let shift = seq.eval(n)?;
            prod = prod.mul(&sys.iterate(f, shift)?)?;
        }
        acc.add_scaled(&prod, weights.get(i))?;
    }
    let avg = acc.scale(Complex64::new(1.0 / count as f64, 0.0));
    let norm = avg.l2_norm();
    Ok((avg, norm))
}

/// Exact `N -> infinity` limit of `E_{n in [N]} prod_j T^{a_j(n)} f_j` on an
/// affine system, for polynomial sequences: expand symbolically in `n`, drop
/// `n`-dependent frequencies (vanishing box density in `L^2`), Weyl-average
/// the surviving phases.
pub fn multiple_average_symbolic(
    sys: &AffineSystem,
    items: &[(&IntegerSequence, &TrigPolynomial)],
) -> Result<(TrigPolynomial, Census)> {
    if items.is_empty() {
        return Err(Error::Precondition("need at least one factor".into()));
    }
    let mut prod = SymbolicFunction::one(sys.dim());
    for (seq, f) in items {
        let coeffs = seq.as_polynomial().ok_or_else(|| {
            Error::UnsupportedRepresentation(
                "symbolic limits require polynomial sequences".into(),
            )
        })?;
        let exponent = IntPoly::univariate("n", coeffs);
        let shifted = sys.iterate_symbolic(&SymbolicFunction::from_trig(f), &exponent)?;
        prod = prod.mul(&shifted)?;
    }
    let vars: BTreeSet<String> = [String::from("n")].into();
    let (limit, census) = prod.box_limit(&vars)?;
    Ok((limit.to_trig()?, census))
}

/// Cubic average of degree `s`: `E_{n in [N]^s} prod_{eps != 0} T^{eps.n}
/// f_eps`, with `fs[mask - 1]` the function at the vertex with bit pattern
/// `mask`.
pub fn cubic_average_finite(
    sys: &impl FiniteSystem,
    fs: &[&CyclicFunction],
    degree: u32,
    count: u64,
) -> Result<CyclicFunction> {
    if degree == 0 || degree > 4 {
        return Err(Error::Precondition("cubic degree must be in 1..=4".into()));
    }
    let vertices = (1usize << degree) - 1;
    if fs.len() != vertices {
        return Err(Error::DimensionMismatch(alloc::format!(
            "need {vertices} vertex functions, got {}",
            fs.len()
        )));
    }
    if count == 0 {
        return Err(Error::Precondition("empty cubic average".into()));
    }
    for f in fs {
        if f.len() != sys.size() {
            return Err(Error::DimensionMismatch(
                "function length vs system size".into(),
            ));
        }
    }
    let size = sys.size();
    let s = degree as usize;
    let total = (count as usize)
        .checked_pow(degree)
        .ok_or_else(|| Error::Overflow("cubic index space".into()))?;
    let sides = vec![count as usize; s];
    let sum = util::tree_sum_vec(total, size, |idx, acc| {
        let mut tuple = [0usize; 4];
        util::decode_index(idx, &sides, &mut tuple[..s]);
        for (x, slot) in acc.iter_mut().enumerate() {
            let mut prod = Complex64::ONE;
            for mask in 1..=vertices {
                let mut shift = 0i64;
                for (j, t) in tuple[..s].iter().enumerate() {
                    if mask >> j & 1 == 1 {
                        shift += *t as i64 + 1;
                    }
                }
                prod *= fs[mask - 1].values[sys.shift(x, shift)];
            }
            *slot += prod;
        }
    });
    Ok(CyclicFunction::new(
        sum.into_iter().map(|v| v / total as f64).collect(),
    ))
}

/// Cubic average on the numeric affine backend.
pub fn cubic_average_numeric(
    sys: &NumericAffineSystem,
    fs: &[&NumericTrigPoly],
    degree: u32,
    count: u64,
) -> Result<NumericTrigPoly> {
    if degree == 0 || degree > 4 {
        return Err(Error::Precondition("cubic degree must be in 1..=4".into()));
    }
    let vertices = (1usize << degree) - 1;
    if fs.len() != vertices {
        return Err(Error::DimensionMismatch(alloc::format!(
            "need {vertices} vertex functions, got {}",
            fs.len()
        )));
    }
    let dim = fs[0].dim();
    let s = degree as usize;
    let total = (count as usize)
        .checked_pow(degree)
        .ok_or_else(|| Error::Overflow("cubic index space".into()))?;
    let sides = vec![count as usize; s];
    let mut acc = NumericTrigPoly::zero(dim);
    let mut tuple = [0usize; 4];
    for idx in 0..total {
        util::decode_index(idx, &sides, &mut tuple[..s]);
        let mut prod = NumericTrigPoly::one(dim);
        for mask in 1..=vertices {
            let mut shift = 0i64;
            for (j, t) in tuple[..s].iter().enumerate() {
                if mask >> j & 1 == 1 {
                    shift += *t as i64 + 1;
                }
            }
            prod = prod.mul(&sys.iterate(fs[mask - 1], shift)?)?;
        }
        acc.add_scaled(&prod, Complex64::ONE)?;
    }
    Ok(acc.scale(Complex64::new(1.0 / total as f64, 0.0)))
}

/// Both sides of the square-average comparison at the same truncation:
/// `lhs = E_{n in [N]} T^{a(n)} f1 T^{b(n)} f2 T^{a(n)+b(n)} f3`,
/// `rhs = E_{r,s in [N]^2} T^r f1 T^s f2 T^{r+s} f3`, plus their `L^2`
/// distance.
pub fn square_vs_double_linear_finite(
    sys: &impl FiniteSystem,
    a: &IntegerSequence,
    b: &IntegerSequence,
    f1: &CyclicFunction,
    f2: &CyclicFunction,
    f3: &CyclicFunction,
    count: u64,
) -> Result<(CyclicFunction, CyclicFunction, f64)> {
    if count == 0 {
        return Err(Error::Precondition("empty square average".into()));
    }
    let size = sys.size();
    for f in [f1, f2, f3] {
        if f.len() != size {
            return Err(Error::DimensionMismatch(
                "function length vs system size".into(),
            ));
        }
    }
    let av: Vec<i64> = (1..=count).map(|n| a.eval(n)).collect::<Result<_>>()?;
    let bv: Vec<i64> = (1..=count).map(|n| b.eval(n)).collect::<Result<_>>()?;
    let lhs_sum = util::tree_sum_vec(count as usize, size, |i, acc| {
        let (sa, sb) = (av[i], bv[i]);
        for (x, slot) in acc.iter_mut().enumerate() {
            *slot += f1.values[sys.shift(x, sa)]
                * f2.values[sys.shift(x, sb)]
                * f3.values[sys.shift(x, sa + sb)];
        }
    });
    let lhs = CyclicFunction::new(lhs_sum.into_iter().map(|v| v / count as f64).collect());
    let n2 = (count as usize) * (count as usize);
    let rhs_sum = util::tree_sum_vec(n2, size, |idx, acc| {
        let r = (idx / count as usize) as i64 + 1;
        let s = (idx % count as usize) as i64 + 1;
        for (x, slot) in acc.iter_mut().enumerate() {
            *slot += f1.values[sys.shift(x, r)]
                * f2.values[sys.shift(x, s)]
                * f3.values[sys.shift(x, r + s)];
        }
    });
    let rhs = CyclicFunction::new(rhs_sum.into_iter().map(|v| v / n2 as f64).collect());
    let dist = lhs.l2_distance(&rhs)?;
    Ok((lhs, rhs, dist))
}

/// Square-average comparison on the numeric affine backend.
pub fn square_vs_double_linear_numeric(
    sys: &NumericAffineSystem,
    a: &IntegerSequence,
    b: &IntegerSequence,
    f1: &NumericTrigPoly,
    f2: &NumericTrigPoly,
    f3: &NumericTrigPoly,
    count: u64,
) -> Result<(NumericTrigPoly, NumericTrigPoly, f64)> {
    if count == 0 {
        return Err(Error::Precondition("empty square average".into()));
    }
    let dim = f1.dim();
    let mut lhs = NumericTrigPoly::zero(dim);
    for n in 1..=count {
        let (sa, sb) = (a.eval(n)?, b.eval(n)?);
        let prod = sys
            .iterate(f1, sa)?
            .mul(&sys.iterate(f2, sb)?)?
            .mul(&sys.iterate(f3, sa + sb)?)?;
        lhs.add_scaled(&prod, Complex64::ONE)?;
    }
    let lhs = lhs.scale(Complex64::new(1.0 / count as f64, 0.0));
    let mut rhs = NumericTrigPoly::zero(dim);
    for r in 1..=count as i64 {
        for s in 1..=count as i64 {
            let prod = sys
                .iterate(f1, r)?
                .mul(&sys.iterate(f2, s)?)?
                .mul(&sys.iterate(f3, r + s)?)?;
            rhs.add_scaled(&prod, Complex64::ONE)?;
        }
    }
    let rhs = rhs.scale(Complex64::new(1.0 / (count * count) as f64, 0.0));
    let dist = lhs.l2_distance(&rhs)?;
    Ok((lhs, rhs, dist))
}

/// `E_{n in [N]} mu(A ∩ T^{-k_1 a(n)} A ∩ ... ∩ T^{-k_l a(n)} A)` with `mu`
/// normalized counting measure on a finite system.
pub fn recurrence_average(
    sys: &impl FiniteSystem,
    set: &[usize],
    seq: &IntegerSequence,
    ks: &[i64],
    count: u64,
) -> Result<f64> {
    if set.is_empty() {
        return Err(Error::Precondition("recurrence set must be nonempty".into()));
    }
    if ks.is_empty() || count == 0 {
        return Err(Error::Precondition(
            "need at least one exponent and one sample".into(),
        ));
    }
    let size = sys.size();
    let mut member = vec![false; size];
    for &x in set {
        if x >= size {
            return Err(Error::Precondition("set element out of range".into()));
        }
        member[x] = true;
    }
    let mut total = 0.0f64;
    for n in 1..=count {
        let a = seq.eval(n)?;
        let mut hits = 0usize;
        'points: for x in 0..size {
            if !member[x] {
                continue;
            }
            for &k in ks {
                // x in T^{-k a(n)} A  iff  T^{k a(n)} x in A
                let shift = k
                    .checked_mul(a)
                    .ok_or_else(|| Error::Overflow("recurrence iterate".into()))?;
                if !member[sys.shift(x, shift)] {
                    continue 'points;
                }
            }
            hits += 1;
        }
        total += hits as f64 / size as f64;
    }
    Ok(total / count as f64)
}

/// One row per truncation count: `(N, value(N))`.
pub fn convergence_table(
    mut eval: impl FnMut(u64) -> Result<f64>,
    counts: &[u64],
) -> Result<Vec<(u64, f64)>> {
    let mut rows = Vec::with_capacity(counts.len());
    for &n in counts {
        rows.push((n, eval(n)?));
    }
    Ok(rows)
}

/// `L^2` distance between a finite truncation and an exact limit on the
/// affine backend (Parseval over the union of frequencies).
pub fn distance_to_limit(
    truncated: &NumericTrigPoly,
    limit: &TrigPolynomial,
    inst: &crate::scalars::Instantiation,
) -> Result<f64> {
    let exact = NumericTrigPoly::from_exact(limit, inst)?;
    truncated.l2_distance(&exact)
}

/// Rational interval helper.
pub fn rat_interval(lo: (i64, i64), hi: (i64, i64)) -> (Rat, Rat) {
    (
        Rat::new(BigInt::from(lo.0), BigInt::from(lo.1)),
        Rat::new(BigInt::from(hi.0), BigInt::from(hi.1)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{ExactComplex, Instantiation};
    use crate::systems::CyclicSystem;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_function(sys: &impl FiniteSystem, rng: &mut StdRng) -> CyclicFunction {
        CyclicFunction::new(
            (0..sys.size())
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        )
    }

    #[test]
    fn constants_average_to_their_product() {
        let sys = CyclicSystem::new(8, 1).unwrap();
        let one = CyclicFunction::one(&sys);
        let id = IntegerSequence::identity();
        let (avg, norm) =
            multiple_average_finite(&sys, &[(&id, &one), (&id, &one)], 64, &Weights::Unit)
                .unwrap();
        assert!(avg.l2_distance(&one).unwrap() < 1e-12);
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn multiples_of_modulus_are_identity_iterates() {
        let sys = CyclicSystem::new(6, 1).unwrap();
        let mut rng = StdRng::seed_from_u64(40);
        let f = random_function(&sys, &mut rng);
        let g = random_function(&sys, &mut rng);
        let scaled = IntegerSequence::polynomial(&[0, 6]);
        let (avg, _) =
            multiple_average_finite(&sys, &[(&scaled, &f), (&scaled, &g)], 12, &Weights::Unit)
                .unwrap();
        let expected = f.mul(&g).unwrap();
        assert!(avg.l2_distance(&expected).unwrap() < 1e-12);
    }

    #[test]
    fn full_period_character_sum_vanishes() {
        let sys = CyclicSystem::new(8, 1).unwrap();
        let f = CyclicFunction::character(&sys, 1);
        let id = IntegerSequence::identity();
        let (_, norm) = multiple_average_finite(&sys, &[(&id, &f)], 8, &Weights::Unit).unwrap();
        assert!(norm < 1e-12);
    }

    #[test]
    fn unit_weights_match_box_interval() {
        let sys = CyclicSystem::new(10, 3).unwrap();
        let mut rng = StdRng::seed_from_u64(41);
        let f = random_function(&sys, &mut rng);
        let id = IntegerSequence::identity();
        let (a, _) = multiple_average_finite(&sys, &[(&id, &f)], 25, &Weights::Unit).unwrap();
        let n_poly = IntPoly::var("n1");
        let (b, _) = multiple_average_box_finite(
            &sys,
            &[(&n_poly, &f)],
            &FolnerBox::interval(25),
            &Weights::Unit,
        )
        .unwrap();
        assert!(a.l2_distance(&b).unwrap() < 1e-12);
    }

    #[test]
    fn weighted_norm_bound() {
        let sys = CyclicSystem::new(12, 5).unwrap();
        let mut rng = StdRng::seed_from_u64(42);
        let f = random_function(&sys, &mut rng);
        let g = random_function(&sys, &mut rng);
        let w: Vec<Complex64> = (0..50)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * 0.5)
            .collect();
        let id = IntegerSequence::identity();
        let sq = IntegerSequence::polynomial(&[0, 0, 1]);
        let (_, norm) = multiple_average_finite(
            &sys,
            &[(&id, &f), (&sq, &g)],
            50,
            &Weights::Table(w.clone()),
        )
        .unwrap();
        let bound = f.sup_norm() * g.sup_norm() * w.iter().map(|x| x.norm()).fold(0.0, f64::max);
        assert!(norm <= bound + 1e-9);
    }

    #[test]
    fn symbolic_limits_on_skew_product() {
        let sys = AffineSystem::skew_product("alpha");
        let id = IntegerSequence::identity();
        // f = e(x1), a(n) = n: frequency constant, phase n*alpha -> 0.
        let e1 = TrigPolynomial::character(2, &[1, 0]);
        let (lim, _) = multiple_average_symbolic(&sys, &[(&id, &e1)]).unwrap();
        assert!(lim.is_zero());
        // f = 1 -> 1.
        let one = TrigPolynomial::one(2);
        let (lim, _) = multiple_average_symbolic(&sys, &[(&id, &one)]).unwrap();
        assert_eq!(lim.integral(), ExactComplex::one());
        // f = e(x2), a(n) = n: frequency (2n, 1) non-constant -> dropped.
        let e2 = TrigPolynomial::character(2, &[0, 1]);
        let (lim, census) = multiple_average_symbolic(&sys, &[(&id, &e2)]).unwrap();
        assert!(lim.is_zero());
        assert_eq!(census.dropped_variable_freq, 1);
        // finite confirmation at N = 512: norm below 0.1
        let inst = Instantiation::standard();
        let nsys = sys.instantiate(&inst).unwrap();
        let e2n = NumericTrigPoly::from_exact(&e2, &inst).unwrap();
        let (_, norm) =
            multiple_average_numeric(&nsys, &[(&id, &e2n)], 512, &Weights::Unit).unwrap();
        assert!(norm < 0.1, "norm(512) = {norm}");
    }

    #[test]
    fn cubic_average_degenerate_cases() {
        let sys = CyclicSystem::new(8, 1).unwrap();
        let one = CyclicFunction::one(&sys);
        let avg = cubic_average_finite(&sys, &[&one], 1, 16).unwrap();
        assert!(avg.l2_distance(&one).unwrap() < 1e-12);
        // degree 1 with a character reduces to the ergodic average
        let f = CyclicFunction::character(&sys, 1);
        let avg = cubic_average_finite(&sys, &[&f], 1, 8).unwrap();
        assert!(avg.l2_norm() < 1e-12);
    }

    #[test]
    fn cubic_average_matches_direct_oracle() {
        let sys = CyclicSystem::new(8, 1).unwrap();
        let chi = CyclicFunction::character(&sys, 1);
        let fs = [&chi, &chi, &chi];
        let got = cubic_average_finite(&sys, &fs, 2, 8).unwrap();
        let n = 8usize;
        let mut acc = vec![Complex64::ZERO; n];
        for n1 in 1..=8i64 {
            for n2 in 1..=8i64 {
                for (x, slot) in acc.iter_mut().enumerate() {
                    *slot += chi.values[sys.shift(x, n1)]
                        * chi.values[sys.shift(x, n2)]
                        * chi.values[sys.shift(x, n1 + n2)];
                }
            }
        }
        let oracle = CyclicFunction::new(acc.into_iter().map(|v| v / 64.0).collect());
        assert!(got.l2_distance(&oracle).unwrap() < 1e-12);
    }

    #[test]
    fn square_identity_trivial_cases() {
        let sys = CyclicSystem::new(8, 3).unwrap();
        let one = CyclicFunction::one(&sys);
        let id = IntegerSequence::identity();
        let sq = IntegerSequence::polynomial(&[0, 0, 1]);
        let (_, _, dist) =
            square_vs_double_linear_finite(&sys, &id, &sq, &one, &one, &one, 16).unwrap();
        assert!(dist < 1e-12);
    }

    #[test]
    fn recurrence_trivial_values() {
        let sys = CyclicSystem::new(12, 1).unwrap();
        let all: Vec<usize> = (0..12).collect();
        let id = IntegerSequence::identity();
        let v = recurrence_average(&sys, &all, &id, &[1], 12).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        // a(n) = N*n: identity iterates, so the value is mu(A)
        let scaled = IntegerSequence::polynomial(&[0, 12]);
        let a = [0usize, 1];
        let v = recurrence_average(&sys, &a, &scaled, &[1], 5).unwrap();
        assert!((v - 2.0 / 12.0).abs() < 1e-12);
    }

    #[test]
    fn recurrence_matches_brute_force() {
        let sys = CyclicSystem::new(12, 1).unwrap();
        let a = [0usize, 1];
        let id = IntegerSequence::identity();
        let got = recurrence_average(&sys, &a, &id, &[1], 12).unwrap();
        let mut total = 0.0;
        for n in 1..=12i64 {
            let mut hits = 0;
            for &x in &a {
                if a.contains(&(((x as i64 + n).rem_euclid(12)) as usize)) {
                    hits += 1;
                }
            }
            total += hits as f64 / 12.0;
        }
        let oracle = total / 12.0;
        assert!((got - oracle).abs() < 1e-12);
    }

    #[test]
    fn product_trick_identity_and_inequality() {
        // (i)  |integral(T^{k1} f1 * T^{k2} f2)|^2 equals the tensored
        //      integral on the product system, exactly.
        // (ii) squared weighted-average norm <= tensored-average norm.
        let sys = CyclicSystem::new(9, 2).unwrap();
        let prod = crate::systems::CyclicProduct::square(sys).unwrap();
        let mut rng = StdRng::seed_from_u64(43);
        for _ in 0..20 {
            let f = random_function(&sys, &mut rng);
            let g = random_function(&sys, &mut rng);
            let (k1, k2) = (rng.gen_range(-10i64..10), rng.gen_range(-10i64..10));
            let lhs = f
                .iterate(&sys, k1)
                .mul(&g.iterate(&sys, k2))
                .unwrap()
                .integral()
                .norm_sqr();
            let ft = f.tensor(&f.conj());
            let gt = g.tensor(&g.conj());
            let rhs = ft
                .iterate(&prod, k1)
                .mul(&gt.iterate(&prod, k2))
                .unwrap()
                .integral();
            assert!((lhs - rhs.re).abs() < 1e-9);
            assert!(rhs.im.abs() < 1e-9);
        }
        // (ii)
        let f = random_function(&sys, &mut rng);
        let g = random_function(&sys, &mut rng);
        let w: Vec<Complex64> = (0..40)
            .map(|_| util::e_unit(rng.gen_range(0.0..1.0)) * rng.gen_range(0.0..1.0))
            .collect();
        let id = IntegerSequence::identity();
        let sq = IntegerSequence::polynomial(&[0, 0, 1]);
        let (_, weighted) =
            multiple_average_finite(&sys, &[(&id, &f), (&sq, &g)], 40, &Weights::Table(w))
                .unwrap();
        let ft = f.tensor(&f.conj());
        let gt = g.tensor(&g.conj());
        let (_, tensored) =
            multiple_average_finite(&prod, &[(&id, &ft), (&sq, &gt)], 40, &Weights::Unit)
                .unwrap();
        assert!(weighted * weighted <= tensored + 1e-9);
    }

    #[test]
    fn convergence_table_rows() {
        let rows = convergence_table(|n| Ok(1.0 / n as f64), &[2, 4, 8]).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[2].0, 8);
        let empty = convergence_table(|_| Ok(0.0), &[]).unwrap();
        assert!(empty.is_empty());
    }
}
