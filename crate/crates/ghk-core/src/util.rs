//! Float shims, deterministic reductions, and small integer helpers.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

/// `sqrt` that works with or without `std`.
#[inline]
pub fn sqrt(x: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        x.sqrt()
    }
    #[cfg(not(feature = "std"))]
    {
        libm::sqrt(x)
    }
}

#[inline]
fn sin_cos(x: f64) -> (f64, f64) {
    #[cfg(feature = "std")]
    {
        x.sin_cos()
    }
    #[cfg(not(feature = "std"))]
    {
        (libm::sin(x), libm::cos(x))
    }
}

#[inline]
pub fn floor(x: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        x.floor()
    }
    #[cfg(not(feature = "std"))]
    {
        libm::floor(x)
    }
}

/// Fractional part in `[0, 1)`.
#[inline]
pub fn frac(x: f64) -> f64 {
    let f = x - floor(x);
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

/// `e(t) = exp(2 pi i t)`, evaluated on the fractional part of `t` so large
/// arguments do not lose precision in the trigonometric kernel.
#[inline]
pub fn e_unit(t: f64) -> Complex64 {
    let (s, c) = sin_cos(2.0 * core::f64::consts::PI * frac(t));
    Complex64::new(c, s)
}

/// `x^e` by repeated multiplication (works without `std`).
#[inline]
pub fn pow_int(x: f64, e: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// `x^(1/2^s)` for `x >= 0`, by repeated square roots.
#[inline]
pub fn root_pow2(x: f64, s: u32) -> f64 {
    let mut v = x;
    for _ in 0..s {
        v = sqrt(v);
    }
    v
}

/// Generalized binomial coefficient `C(n, j) = n(n-1)...(n-j+1)/j!`, valid
/// for negative `n` as well.
pub fn binomial(n: i64, j: u32) -> BigInt {
    let mut num = BigInt::one();
    for i in 0..j as i64 {
        num *= BigInt::from(n - i);
    }
    let mut den = BigInt::one();
    for i in 1..=j as i64 {
        den *= BigInt::from(i);
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// Euler totient by trial division; orders here are tiny.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

const SEQ_THRESHOLD: usize = 2048;

/// Deterministic tree fold over `0..n`.
///
/// The reduction tree is fixed by the index range alone (split at the
/// midpoint, sequential below a threshold), so the result is bit-identical
/// whether the upper levels run sequentially or on a rayon pool, and for any
/// worker count. All floating-point accumulation in the crate's big loops
/// goes through this.
pub fn tree_fold<T, L, M>(n: usize, leaf: &L, merge: &M) -> T
where
    T: Send,
    L: Fn(core::ops::Range<usize>) -> T + Sync,
    M: Fn(T, T) -> T + Sync,
{
    fold_range(0..n, leaf, merge)
}

fn fold_range<T, L, M>(range: core::ops::Range<usize>, leaf: &L, merge: &M) -> T
where
    T: Send,
    L: Fn(core::ops::Range<usize>) -> T + Sync,
    M: Fn(T, T) -> T + Sync,
{
    let len = range.end - range.start;
    if len <= SEQ_THRESHOLD {
        return leaf(range);
    }
    let mid = range.start + len / 2;
    let (lo, hi) = (range.start..mid, mid..range.end);
    #[cfg(feature = "parallel")]
    {
        let (a, b) = rayon::join(|| fold_range(lo, leaf, merge), || fold_range(hi, leaf, merge));
        merge(a, b)
    }
    #[cfg(not(feature = "parallel"))]
    {
        let a = fold_range(lo, leaf, merge);
        let b = fold_range(hi, leaf, merge);
        merge(a, b)
    }
}

/// Deterministic sum of `f(i)` for `i` in `0..n`.
pub fn tree_sum(n: usize, f: impl Fn(usize) -> Complex64 + Sync) -> Complex64 {
    tree_fold(
        n,
        &|range: core::ops::Range<usize>| {
            let mut acc = Complex64::ZERO;
            for i in range {
                acc += f(i);
            }
            acc
        },
        &|a, b| a + b,
    )
}

/// Deterministic elementwise sum of vectors `f(i)` of fixed length `len`.
pub fn tree_sum_vec(n: usize, len: usize, f: impl Fn(usize, &mut Vec<Complex64>) + Sync) -> Vec<Complex64> {
    tree_fold(
        n,
        &|range: core::ops::Range<usize>| {
            let mut acc = vec![Complex64::ZERO; len];
            for i in range {
                f(i, &mut acc);
            }
            acc
        },
        &|mut a, b| {
            for (x, y) in a.iter_mut().zip(b.iter()) {
                *x += y;
            }
            a
        },
    )
}

/// Mixed-radix index decoding: `index` over a box with the given side
/// lengths, first coordinate slowest.
pub fn decode_index(mut index: usize, sides: &[usize], out: &mut [usize]) {
    for (slot, &side) in out.iter_mut().zip(sides.iter()).rev() {
        *slot = index % side;
        index /= side;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_matches_small_cases() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(-1, 3), BigInt::from(-1));
        assert_eq!(binomial(-2, 2), BigInt::from(3));
    }

    #[test]
    fn phi_and_divisors() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(divisors(12), alloc::vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn tree_sum_matches_sequential() {
        let n = 10_000;
        let direct: Complex64 = (0..n).map(|i| Complex64::new(i as f64, -(i as f64))).sum();
        let tree = tree_sum(n, |i| Complex64::new(i as f64, -(i as f64)));
        assert_eq!(direct.re, tree.re);
        assert_eq!(direct.im, tree.im);
    }

    #[test]
    fn decode_index_roundtrip() {
        let sides = [3usize, 4, 5];
        let mut out = [0usize; 3];
        for idx in 0..60 {
            decode_index(idx, &sides, &mut out);
            let re = (out[0] * 4 + out[1]) * 5 + out[2];
            assert_eq!(re, idx);
        }
    }
}
