//! Exact reproduction of the skew-product dual-function computation: for
//! `f(x1, x2) = sum_{l=1}^k c_l e(l x2)` on `T(x1, x2) = (x1 + a, x2 + 2 x1
//! + a)`, both `[f]_2` and `[Dual_3 f]_2` are exactly zero, and the term
//! census of the dual expansion matches the expected case split.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::calculus::{dual_symbolic_trig, seminorm_symbolic};
use crate::scalars::{ExactComplex, Instantiation, Rat};
use crate::systems::{AffineSystem, Fate, TrigPolynomial};
use crate::scenarios::{ExpectedTable, ScenarioReport};
use crate::Result;

pub const ID: &str = "dual_vanishing";

#[derive(Clone, Debug)]
pub struct DualVanishingParams {
    /// Number of characters `e(l x2)`, `l = 1..=k`; `k = 0` means `f = 0`.
    pub k: usize,
    /// Rational coefficients `c_l` (defaults to all ones).
    pub coefficients: Vec<Rat>,
}

impl DualVanishingParams {
    pub fn with_unit_coefficients(k: usize) -> Self {
        DualVanishingParams {
            k,
            coefficients: (0..k).map(|_| Rat::from_integer(1.into())).collect(),
        }
    }
}

pub fn dual_vanishing(
    params: &DualVanishingParams,
    table: &ExpectedTable,
    inst: &Instantiation,
) -> Result<ScenarioReport> {
    if params.k > 3 {
        return Err(crate::Error::Precondition(
            "dual_vanishing supports k <= 3".into(),
        ));
    }
    if params.coefficients.len() != params.k {
        return Err(crate::Error::Precondition(
            "need one coefficient per character".into(),
        ));
    }
    let mut report = ScenarioReport::new(ID);
    report.input("k", params.k);
    report.input(
        "coefficients",
        params
            .coefficients
            .iter()
            .map(|c| format!("{c}"))
            .collect::<Vec<_>>()
            .join(","),
    );

    let sys = AffineSystem::skew_product("alpha");
    let mut f = TrigPolynomial::zero(2);
    for (i, c) in params.coefficients.iter().enumerate() {
        f.insert(
            alloc::vec![0, i as i64 + 1],
            ExactComplex::from_rat(c.clone()),
        );
    }

    if params.k == 0 {
        // f = 0: trivially zero seminorms, nothing to census.
        report.check(table, "f_seminorm2_power", 0.0, "structural zero (f = 0)")?;
        report.check(table, "dual3_seminorm2_power", 0.0, "structural zero (f = 0)")?;
        return Ok(report);
    }

    // [f]_2 = 0, exactly.
    let s2 = seminorm_symbolic(&sys, &f, 2, inst)?;
    report.check(
        table,
        "f_seminorm2_power",
        zero_indicator(&s2.power, inst)?,
        zero_detail(&s2.power, inst)?,
    )?;

    // Dual_3 f, with the census of the exact limit.
    let (dual, census) = dual_symbolic_trig(&sys, &f, 3)?;
    report.note("dual3_terms", dual.num_terms());
    report.note("census_total", census.total());
    report.note("census_kept", census.kept);
    report.note("census_dropped_variable_freq", census.dropped_variable_freq);
    report.note("census_dropped_weyl", census.dropped_weyl);

    // Case split of the expansion terms by their total x2-frequency sigma
    // (the analogue of l1 + l2 + l3): every sigma = 0 term must be
    // discarded, every term with averaging-variable-dependent frequency
    // must be discarded, and the kept terms are exactly the k diagonal
    // families (all labels equal), carrying sigma != 0.
    let mut sigma_zero_total = 0usize;
    let mut sigma_zero_dropped = 0usize;
    let mut var_freq_kept = 0usize;
    for rec in &census.records {
        let sigma = rec.freq[1]
            .as_constant()
            .expect("x2-frequency is constant on this system");
        let var_dependent = rec.freq.iter().any(|p| !p.vars().is_empty());
        if sigma.is_zero() {
            sigma_zero_total += 1;
            if rec.fate != Fate::Kept {
                sigma_zero_dropped += 1;
            }
        }
        if var_dependent && rec.fate == Fate::Kept {
            var_freq_kept += 1;
        }
    }
    report.note("sigma_zero_terms", sigma_zero_total);
    report.check(
        table,
        "sigma_zero_terms_all_dropped",
        (sigma_zero_total - sigma_zero_dropped) as f64,
        format!("{sigma_zero_dropped}/{sigma_zero_total} zero-frequency-sum terms dropped"),
    )?;
    report.check(
        table,
        "variable_frequency_terms_all_dropped",
        var_freq_kept as f64,
        "terms with averaging-variable-dependent frequency that survived",
    )?;
    report.check(
        table,
        "kept_terms_equal_k",
        census.kept as f64 - params.k as f64,
        format!("kept {} of {} expansion terms", census.kept, census.total()),
    )?;

    // Every kept term is a pure character e(-l x2) (frequency (0, -l)).
    let mut kept_freqs: Vec<String> = Vec::new();
    for (freq, _) in dual.terms() {
        kept_freqs.push(format!("({}, {})", freq[0], freq[1]));
    }
    report.note("dual3_frequencies", kept_freqs.join(" "));

    // [Dual_3 f]_2 = 0, exactly.
    let d2 = seminorm_symbolic(&sys, &dual, 2, inst)?;
    report.check(
        table,
        "dual3_seminorm2_power",
        zero_indicator(&d2.power, inst)?,
        zero_detail(&d2.power, inst)?,
    )?;
    Ok(report)
}

/// 0.0 exactly when the value is a structural zero; otherwise its numeric
/// modulus bounded away from 0 so an exact-zero check cannot pass by
/// floating-point accident.
pub(crate) fn zero_indicator(v: &ExactComplex, inst: &Instantiation) -> Result<f64> {
    if v.is_zero() {
        return Ok(0.0);
    }
    let m = v.eval(inst)?.norm();
    Ok(if m == 0.0 { f64::MIN_POSITIVE } else { m })
}

pub(crate) fn zero_detail(v: &ExactComplex, inst: &Instantiation) -> Result<String> {
    if v.is_zero() {
        Ok("structural zero".into())
    } else {
        Ok(format!("nonzero: {v} ~ {}", v.eval(inst)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;
    use crate::scenarios::{CheckKind, Expectation};

    fn table() -> ExpectedTable {
        let mut t = ExpectedTable::new();
        for check in [
            "f_seminorm2_power",
            "dual3_seminorm2_power",
            "sigma_zero_terms_all_dropped",
            "variable_frequency_terms_all_dropped",
            "kept_terms_equal_k",
        ] {
            t.insert(
                ID,
                check,
                Expectation {
                    value: 0.0,
                    tolerance: 0.0,
                    kind: CheckKind::Exact,
                    provenance: "paper".into(),
                    oracle: String::new(),
                },
            );
        }
        t
    }

    #[test]
    fn single_character_vanishes() {
        let inst = Instantiation::standard();
        let r = dual_vanishing(
            &DualVanishingParams::with_unit_coefficients(1),
            &table(),
            &inst,
        )
        .unwrap();
        assert!(r.passed(), "{:?}", r.checks);
    }

    #[test]
    fn two_characters_vanish_with_mixed_census() {
        let inst = Instantiation::standard();
        let params = DualVanishingParams {
            k: 2,
            coefficients: alloc::vec![rat(1, 1), rat(1, 2)],
        };
        let r = dual_vanishing(&params, &table(), &inst).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
        // expansion has 2^7 = 128 terms; both discard mechanisms fire
        let total: usize = r
            .notes
            .iter()
            .find(|(k, _)| k == "census_total")
            .map(|(_, v)| v.parse().unwrap())
            .unwrap();
        assert_eq!(total, 128);
        let weyl: usize = r
            .notes
            .iter()
            .find(|(k, _)| k == "census_dropped_weyl")
            .map(|(_, v)| v.parse().unwrap())
            .unwrap();
        assert!(weyl > 0);
    }

    #[test]
    fn zero_function_vacuously_passes() {
        let inst = Instantiation::standard();
        let r = dual_vanishing(
            &DualVanishingParams::with_unit_coefficients(0),
            &table(),
            &inst,
        )
        .unwrap();
        assert!(r.passed());
    }

    #[test]
    fn missing_expectation_is_an_error() {
        let inst = Instantiation::standard();
        let empty = ExpectedTable::new();
        let err = dual_vanishing(
            &DualVanishingParams::with_unit_coefficients(1),
            &empty,
            &inst,
        );
        assert!(matches!(err, Err(crate::Error::MissingExpectation { .. })));
    }
}
