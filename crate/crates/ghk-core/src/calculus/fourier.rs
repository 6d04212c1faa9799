//! Fourier fast path for the degree-2 seminorm on ergodic cyclic systems:
//! `[f]_2^4 = sum_xi |fhat(xi)|^4` with `fhat(xi) = E_x f(x) e(-x xi / N)`.
//!
//! Valid whenever `gcd(r, N) = 1`: substituting `h -> r h` in the defining
//! average is then a bijection of `Z_N`, reducing the step-`r` seminorm to
//! the step-1 one, which is the classical `U^2` norm.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Error;
use crate::systems::{CyclicFunction, CyclicSystem, FiniteSystem};
use crate::util;
use crate::Result;

/// Normalized DFT: `out[xi] = E_x values[x] e(-x xi / N)`. Radix-2 in-place
/// FFT for powers of two, direct summation otherwise (sizes here are small).
pub fn dft(values: &[Complex64]) -> Vec<Complex64> {
    let n = values.len();
    if n == 0 {
        return Vec::new();
    }
    let mut out = if n.is_power_of_two() {
        let mut buf = values.to_vec();
        fft_pow2(&mut buf);
        buf
    } else {
        (0..n)
            .map(|xi| {
                let mut acc = Complex64::ZERO;
                for (x, v) in values.iter().enumerate() {
                    acc += v * util::e_unit(-((x * xi % n) as f64) / n as f64);
                }
                acc
            })
            .collect()
    };
    let scale = 1.0 / n as f64;
    for v in &mut out {
        *v *= scale;
    }
    out
}

/// Iterative Cooley-Tukey, forward transform (negative exponent), unscaled.
fn fft_pow2(buf: &mut [Complex64]) {
    let n = buf.len();
    let levels = n.trailing_zeros();
    // bit-reversal permutation
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - levels);
        if j > i {
            buf.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let step = util::e_unit(-1.0 / len as f64);
        for start in (0..n).step_by(len) {
            let mut w = Complex64::ONE;
            for k in 0..len / 2 {
                let a = buf[start + k];
                let b = buf[start + k + len / 2] * w;
                buf[start + k] = a + b;
                buf[start + k + len / 2] = a - b;
                w *= step;
            }
        }
        len <<= 1;
    }
}

/// `[f]_2` via the fourth moment of the Fourier coefficients. Precondition:
/// `gcd(r, N) = 1` (otherwise the substitution argument fails and the caller
/// should fall back to definition mode).
pub fn u2_via_fft(sys: &CyclicSystem, f: &CyclicFunction) -> Result<f64> {
    if !sys.is_ergodic() {
        return Err(Error::Precondition(alloc::format!(
            "u2 fast path requires gcd(step, modulus) = 1, got step {} mod {}",
            sys.step(),
            sys.modulus()
        )));
    }
    if f.len() != sys.size() {
        return Err(Error::DimensionMismatch(
            "system size vs function length".into(),
        ));
    }
    let coeffs = dft(&f.values);
    let mut acc = 0.0;
    for c in &coeffs {
        let m2 = c.norm_sqr();
        acc += m2 * m2;
    }
    Ok(util::root_pow2(acc, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::seminorm::seminorm_finite;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn dft_of_character_is_delta() {
        let sys = CyclicSystem::new(8, 1).unwrap();
        let f = CyclicFunction::character(&sys, 3);
        let coeffs = dft(&f.values);
        for (xi, c) in coeffs.iter().enumerate() {
            let expected = if xi == 3 { 1.0 } else { 0.0 };
            assert!((c - Complex64::new(expected, 0.0)).norm() < 1e-12, "xi={xi}");
        }
    }

    #[test]
    fn dft_pow2_matches_direct() {
        let mut rng = StdRng::seed_from_u64(17);
        let values: Vec<Complex64> = (0..16)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let fast = dft(&values);
        let n = values.len();
        for xi in 0..n {
            let mut acc = Complex64::ZERO;
            for (x, v) in values.iter().enumerate() {
                acc += v * util::e_unit(-((x * xi) as f64) / n as f64);
            }
            acc /= n as f64;
            assert!((fast[xi] - acc).norm() < 1e-12);
        }
    }

    #[test]
    fn unit_and_single_character_values() {
        let sys = CyclicSystem::new(8, 1).unwrap();
        assert!((u2_via_fft(&sys, &CyclicFunction::one(&sys)).unwrap() - 1.0).abs() < 1e-12);
        // chi_1 on Z_8: single Fourier coefficient of modulus 1, so the
        // norm is 1. Brute-force oracle over all (x, h1, h2) agrees: every
        // multiplicative derivative of a character is the constant of
        // modulus 1 paired with its conjugate.
        let f = CyclicFunction::character(&sys, 1);
        assert!((u2_via_fft(&sys, &f).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn matches_definition_mode() {
        let mut rng = StdRng::seed_from_u64(29);
        for &(n, r) in &[(16usize, 1i64), (27, 2), (64, 63)] {
            let sys = CyclicSystem::new(n, r).unwrap();
            for _ in 0..5 {
                let f = CyclicFunction::new(
                    (0..n)
                        .map(|_| {
                            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                        })
                        .collect(),
                );
                let fast = u2_via_fft(&sys, &f).unwrap();
                let slow = seminorm_finite(&sys, &f, 2).unwrap().value;
                assert!((fast - slow).abs() < 1e-9, "N={n} r={r}: {fast} vs {slow}");
            }
        }
    }

    #[test]
    fn non_coprime_step_is_rejected() {
        let sys = CyclicSystem::new(8, 2).unwrap();
        let f = CyclicFunction::one(&sys);
        assert!(u2_via_fft(&sys, &f).is_err());
    }
}
