//! Cross-module exact identities: the symbolic backend against small
//! closed-form facts, and the finite backend against its own algebra.

use num_complex::Complex64;

use ghk_core::calculus::{
    dual_finite, dual_symbolic_trig, mult_derivative_finite, seminorm_finite,
    seminorm_power_finite, seminorm_symbolic,
};
use ghk_core::scalars::{rat, ExactComplex, Instantiation};
use ghk_core::systems::{
    AffineSystem, CyclicFunction, CyclicProduct, CyclicSystem, FiniteSystem, TrigPolynomial,
};

/// Dual identity, symbolically: integral(f * Dual_s f) = [f]_s^(2^s) as
/// exact values, for characters on the skew product.
#[test]
fn dual_identity_exact_on_affine_characters() {
    let sys = AffineSystem::skew_product("alpha");
    let inst = Instantiation::standard();
    for (freq, s) in [([1i64, 0], 2u32), ([0, 1], 3), ([2, 0], 2)] {
        let f = TrigPolynomial::character(2, &freq);
        let (dual, _) = dual_symbolic_trig(&sys, &f, s).unwrap();
        let pairing = f.mul(&dual).unwrap().integral();
        let power = seminorm_symbolic(&sys, &f, s, &inst).unwrap().power;
        assert_eq!(pairing, power, "freq {freq:?} level {s}");
    }
}

/// The degree-2 seminorm power of a scaled character is |c|^4, exactly.
#[test]
fn scaled_character_seminorm_power() {
    let sys = AffineSystem::skew_product("alpha");
    let inst = Instantiation::standard();
    let f = TrigPolynomial::character(2, &[1, 0]).scale(&ExactComplex::from_rat(rat(2, 3)));
    let v = seminorm_symbolic(&sys, &f, 2, &inst).unwrap();
    // (2/3)^4 = 16/81
    assert_eq!(v.power, ExactComplex::from_rat(rat(16, 81)));
}

/// Tensor inequality holds with equality for characters on Z_N: both sides
/// are 1.
#[test]
fn tensor_inequality_tight_for_characters() {
    let sys = CyclicSystem::new(12, 1).unwrap();
    let prod = CyclicProduct::square(sys).unwrap();
    let f = CyclicFunction::character(&sys, 5);
    let ft = f.tensor(&f.conj());
    let lhs = seminorm_finite(&prod, &ft, 2).unwrap().value;
    let rhs = seminorm_finite(&sys, &f, 3).unwrap().value;
    assert!((lhs - 1.0).abs() < 1e-12);
    assert!((rhs - 1.0).abs() < 1e-12);
}

/// Multiplicative derivatives compose: D_{h1, h2} f = D_{h2}(D_{h1} f),
/// and the full-period seminorm power telescopes accordingly.
#[test]
fn derivative_composition_matches_power_recursion() {
    let sys = CyclicSystem::new(9, 2).unwrap();
    let f = CyclicFunction::new(
        (0..9)
            .map(|i| Complex64::new((i as f64 * 0.37).cos(), (i as f64 * 0.61).sin()))
            .collect(),
    );
    let p = sys.period();
    // [f]_2^4 computed two ways: recursion, and explicit double average.
    let fast = seminorm_power_finite(&sys, &f, 2).unwrap();
    let mut slow = Complex64::ZERO;
    for h1 in 0..p {
        for h2 in 0..p {
            let d = mult_derivative_finite(&sys, &f, &[h1 as i64, h2 as i64]).unwrap();
            slow += d.integral();
        }
    }
    slow /= (p * p) as f64;
    assert!((fast - slow).norm() < 1e-12);
}

/// Dual of a conjugate equals conjugate of the dual, bit for bit.
#[test]
fn dual_conjugation_equivariance_finite() {
    let sys = CyclicSystem::new(8, 3).unwrap();
    let f = CyclicFunction::new(
        (0..8)
            .map(|i| Complex64::new(0.3 * i as f64 - 1.0, 0.2 * (i as f64).sin()))
            .collect(),
    );
    for s in 1..=3 {
        let a = dual_finite(&sys, &f.conj(), s).unwrap();
        let b = dual_finite(&sys, &f, s).unwrap().conj();
        assert_eq!(a, b);
    }
}
