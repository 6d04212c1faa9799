//! Exact box-limit averages of `e(p(v))` for polynomial phases, by Weyl's
//! equidistribution criterion.
//!
//! For a phase polynomial `p` in variables `V`, the limit of
//! `E_{v in [H]^V} e(p(v))` as `H -> infinity` is:
//!
//! * `0` if any non-constant monomial has a coefficient with a nonzero
//!   irrational component (the values of `p` equidistribute mod 1);
//! * otherwise `e(p(0)) * E_{v in (Z/q)^V} e(p(v) - p(0))`, summed exactly
//!   over one period, where `q` is the lcm of the denominators of the
//!   non-constant coefficients.
//!
//! The partial form averages over a subset `W` of the variables only,
//! treating the remaining variables as *generic* integers: a monomial
//! containing `W`-variables whose coefficient has an irrational component
//! not identically zero (as a polynomial in the free variables) kills the
//! whole average off a zero-density set of the free variables. Callers that
//! later box-average over the free variables (every use in this crate) are
//! therefore exact. A `W`-monomial with a rational coefficient that still
//! depends on free variables would make the average genuinely periodic in
//! them; that case has no single symbolic value and is reported as
//! [`Error::NonGenericAverage`].

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;
use crate::scalars::formal::{FormalScalar, Rat};
use crate::scalars::poly::{Mono, PhasePoly};
use crate::scalars::ExactComplex;
use crate::Result;

/// Result of a partial Weyl average over a variable subset.
#[derive(Clone, Debug, PartialEq)]
pub enum PartialWeyl {
    /// The average vanishes for generic values of the free variables.
    Zero,
    /// The average equals `factor * e(rest)`, with `rest` free of the
    /// averaged variables.
    Reduced { factor: ExactComplex, rest: PhasePoly },
}

/// Limit of `E_{w in [H]^W} e(p(..., w))` as `H -> infinity`, over the
/// variables in `vars`, with all other variables held generic.
pub fn weyl_limit_partial(p: &PhasePoly, vars: &BTreeSet<String>) -> Result<PartialWeyl> {
    let mut rest = PhasePoly::zero();
    // (averaged-part monomial) -> rational coefficient
    let mut periodic: Vec<(Mono, Rat)> = Vec::new();
    for (mono, coeff) in p.terms() {
        let (avg_part, free_part) = split_mono(mono, vars);
        if avg_part.is_empty() {
            rest.insert_term(mono.clone(), coeff.clone());
            continue;
        }
        if !coeff.is_rational() {
            // Irrational coefficient on an averaged monomial: equidistribution
            // kills the limit for generic free values.
            return Ok(PartialWeyl::Zero);
        }
        if !free_part.is_empty() {
            return Err(Error::NonGenericAverage(alloc::format!(
                "rational coefficient {coeff} multiplies a mixed monomial; the average over {vars:?} depends on residues of the free variables"
            )));
        }
        periodic.push((avg_part, coeff.as_rational().unwrap().clone()));
    }
    if periodic.is_empty() {
        return Ok(PartialWeyl::Reduced {
            factor: ExactComplex::one(),
            rest,
        });
    }
    let q = periodic
        .iter()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let q = q.to_u64().ok_or_else(|| Error::ResourceCap {
        what: "Weyl period lcm".into(),
        limit: crate::WEYL_PERIOD_CAP,
    })?;
    // Variables that actually occur in the periodic part; the others average
    // trivially.
    let mut active: Vec<&String> = Vec::new();
    {
        let mut seen = BTreeSet::new();
        for (m, _) in &periodic {
            for v in m.keys() {
                if seen.insert(v) {
                    active.push(v);
                }
            }
        }
    }
    let k = active.len() as u32;
    let total = q.checked_pow(k).filter(|t| *t <= crate::WEYL_PERIOD_CAP);
    let Some(total) = total else {
        return Err(Error::ResourceCap {
            what: alloc::format!("Weyl period sum {q}^{k}"),
            limit: crate::WEYL_PERIOD_CAP,
        });
    };
    let amp = Rat::new(BigInt::one(), BigInt::from(total));
    let mut pairs: Vec<(FormalScalar, Rat)> = Vec::new();
    let mut residues = alloc::vec![0u64; active.len()];
    'outer: loop {
        // phase value at this residue tuple
        let mut val = Rat::zero();
        for (m, c) in &periodic {
            let mut pow = BigInt::one();
            for (v, e) in m {
                let idx = active.iter().position(|a| *a == v).unwrap();
                pow *= BigInt::from(residues[idx]).pow(*e);
            }
            val += c * Rat::from_integer(pow);
        }
        let val = &val - val.floor();
        pairs.push((FormalScalar::from_rat(val), amp.clone()));
        // advance odometer
        let mut i = residues.len();
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            residues[i] += 1;
            if residues[i] < q {
                break;
            }
            residues[i] = 0;
        }
    }
    let factor = ExactComplex::from_pairs(pairs);
    Ok(if factor.is_zero() {
        PartialWeyl::Zero
    } else {
        PartialWeyl::Reduced { factor, rest }
    })
}

/// Exact `lim_{H -> infinity} E_{v in [H]^V} e(p(v))` over all variables of
/// `p`.
pub fn weyl_limit(p: &PhasePoly) -> Result<ExactComplex> {
    let vars = p.vars();
    match weyl_limit_partial(p, &vars)? {
        PartialWeyl::Zero => Ok(ExactComplex::zero()),
        PartialWeyl::Reduced { factor, rest } => {
            let c = rest
                .as_constant()
                .expect("rest contains only variable-free monomials");
            Ok(factor.mul(&ExactComplex::phase(&c)))
        }
    }
}

fn split_mono(mono: &Mono, vars: &BTreeSet<String>) -> (Mono, Mono) {
    let mut avg = Mono::new();
    let mut free = Mono::new();
    for (v, e) in mono {
        if vars.contains(v) {
            avg.insert(v.clone(), *e);
        } else {
            free.insert(v.clone(), *e);
        }
    }
    (avg, free)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::formal::Instantiation;
    use crate::scalars::poly::IntPoly;
    use crate::scalars::{rat, PhasePoly};
    use crate::util;
    use num_complex::Complex64;

    fn phase_univar(coeffs: &[(&str, i64, i64)]) -> PhasePoly {
        // (symbol-or-"" , num, den) per degree, ascending
        let mut p = PhasePoly::zero();
        for (deg, (sym, num, den)) in coeffs.iter().enumerate() {
            let c = if sym.is_empty() {
                FormalScalar::from_rat(rat(*num, *den))
            } else {
                FormalScalar::symbol_scaled(sym, rat(*num, *den))
            };
            let mono = IntPoly::univariate("n", &{
                let mut v = alloc::vec![0i64; deg + 1];
                v[deg] = 1;
                v
            });
            p = p.add(&mono.scale_formal(&c));
        }
        p
    }

    /// Direct truncation oracle: E_{n in [1..h]} e(p(n)).
    fn truncation_oracle(p: &PhasePoly, h: u64) -> Complex64 {
        let inst = Instantiation::standard();
        let mut acc = Complex64::ZERO;
        for n in 1..=h {
            let mut point = alloc::collections::BTreeMap::new();
            point.insert(String::from("n"), num_bigint::BigInt::from(n));
            acc += util::e_unit(p.eval_mod_one(&point, &inst).unwrap());
        }
        acc / h as f64
    }

    #[test]
    fn irrational_linear_phase_vanishes() {
        let p = phase_univar(&[("", 0, 1), ("alpha", 1, 1)]);
        assert_eq!(weyl_limit(&p).unwrap(), ExactComplex::zero());
    }

    #[test]
    fn rational_half_phase_vanishes() {
        let p = phase_univar(&[("", 0, 1), ("", 1, 2)]); // n/2
        assert_eq!(weyl_limit(&p).unwrap(), ExactComplex::zero());
    }

    #[test]
    fn quadratic_third_phase_value() {
        // n^2/3 + 1/7 -> e(1/7) * (1 + 2 e(1/3)) / 3.
        // Independent oracle: exact summation over the period {0, 1, 2} gives
        // (e(0) + e(1/3) + e(4/3 mod 1 = 1/3)) / 3, and the numeric
        // truncation at N = 1e5 confirms it within 5e-3.
        let p = phase_univar(&[("", 1, 7), ("", 0, 1), ("", 1, 3)]);
        let v = weyl_limit(&p).unwrap();
        let expected = ExactComplex::phase(&FormalScalar::from_rat(rat(1, 7)))
            .mul(
                &ExactComplex::one()
                    .add(&ExactComplex::phase(&FormalScalar::from_rat(rat(1, 3))).scale(&rat(2, 1)))
                    .scale(&rat(1, 3)),
            );
        assert_eq!(v, expected);
        let inst = Instantiation::standard();
        let numeric = v.eval(&inst).unwrap();
        let oracle = truncation_oracle(&p, 100_000);
        assert!((numeric - oracle).norm() < 5e-3);
    }

    #[test]
    fn constant_shift_multiplies_by_unit() {
        // weyl(p + c) = e(c) * weyl(p), symbolically.
        let p = phase_univar(&[("", 0, 1), ("", 1, 2), ("", 2, 5)]);
        let c = FormalScalar::symbol_scaled("beta", rat(3, 1));
        let shifted = p.add(&PhasePoly::constant(c.clone()));
        let lhs = weyl_limit(&shifted).unwrap();
        let rhs = weyl_limit(&p).unwrap().mul(&ExactComplex::phase(&c));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn partial_average_keeps_free_variables() {
        // p = alpha*h*k + k/2 + h/3, averaging over k: the alpha*h*k monomial
        // kills it generically.
        let h = IntPoly::var("h");
        let k = IntPoly::var("k");
        let hk = h.try_mul(&k).unwrap();
        let p = hk
            .scale_formal(&FormalScalar::symbol("alpha"))
            .add(&k.scale_formal(&FormalScalar::from_rat(rat(1, 2))))
            .add(&h.scale_formal(&FormalScalar::from_rat(rat(1, 3))));
        let vars: BTreeSet<String> = [String::from("k")].into();
        assert_eq!(weyl_limit_partial(&p, &vars).unwrap(), PartialWeyl::Zero);

        // Without the irrational cross term the k-average is (1 + e(1/2))/2 = 0.
        let p2 = k
            .scale_formal(&FormalScalar::from_rat(rat(1, 2)))
            .add(&h.scale_formal(&FormalScalar::symbol("alpha")));
        match weyl_limit_partial(&p2, &vars).unwrap() {
            PartialWeyl::Zero => {}
            other => panic!("expected zero from the period-2 sum, got {other:?}"),
        }

        // k/3 + h*alpha: k-average is (1 + e(1/3) + e(2/3))/3 = 0; rest keeps h.
        let p3 = k
            .scale_formal(&FormalScalar::from_rat(rat(1, 3)))
            .add(&h.scale_formal(&FormalScalar::symbol("alpha")));
        assert_eq!(weyl_limit_partial(&p3, &vars).unwrap(), PartialWeyl::Zero);

        // Pure free phase: untouched.
        let p4 = h.scale_formal(&FormalScalar::symbol("alpha"));
        match weyl_limit_partial(&p4, &vars).unwrap() {
            PartialWeyl::Reduced { factor, rest } => {
                assert_eq!(factor, ExactComplex::one());
                assert_eq!(rest, p4);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn mixed_rational_cross_term_is_non_generic() {
        // (h/2) * k with h free: genuinely periodic in h, no symbolic value.
        let h = IntPoly::var("h");
        let k = IntPoly::var("k");
        let p = h
            .try_mul(&k)
            .unwrap()
            .scale_formal(&FormalScalar::from_rat(rat(1, 2)));
        let vars: BTreeSet<String> = [String::from("k")].into();
        assert!(matches!(
            weyl_limit_partial(&p, &vars),
            Err(Error::NonGenericAverage(_))
        ));
    }

    #[test]
    fn bivariate_rational_period_sum() {
        // p(n, m) = n*m/2: average over both = E over (Z/2)^2 of e(nm/2)
        // = (1 + 1 + 1 - 1)/4 = 1/2.
        let n = IntPoly::var("n");
        let m = IntPoly::var("m");
        let p = n
            .try_mul(&m)
            .unwrap()
            .scale_formal(&FormalScalar::from_rat(rat(1, 2)));
        let v = weyl_limit(&p).unwrap();
        assert_eq!(v, ExactComplex::from_rat(rat(1, 2)));
    }

    #[test]
    fn modulus_bounded_by_one() {
        let inst = Instantiation::standard();
        let cases = [
            phase_univar(&[("", 1, 7), ("", 1, 6), ("", 2, 3)]),
            phase_univar(&[("", 0, 1), ("", 5, 12), ("", 0, 1), ("", 1, 4)]),
        ];
        for p in cases {
            let v = weyl_limit(&p).unwrap().eval(&inst).unwrap();
            assert!(v.norm() <= 1.0 + 1e-12);
        }
    }
}
