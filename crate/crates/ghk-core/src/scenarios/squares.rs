//! The square-average counterexample: with
//! `a(n) = n * 1[{n^3 alpha} in [0, 1/3)]` and `b(n) = n^2 * 1[same]`, the
//! products `a(n) b(n) alpha = n^3 alpha * gate` keep all their fractional
//! parts inside `[0, 1/3]`, so `(a(n) b(n) alpha)` is certifiably not
//! equidistributed. The finite square-average comparison on the skew
//! product is reported alongside as a numeric illustration.

use alloc::boxed::Box;
use alloc::format;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::averages::square_vs_double_linear_numeric;
use crate::scalars::{rat, Instantiation, Rat};
use crate::sequences::{mass_in, FixedReal, IntegerSequence};
use crate::scenarios::{ExpectedTable, ScenarioReport};
use crate::systems::{AffineSystem, NumericTrigPoly};
use crate::Result;

pub const ID: &str = "squares_counterexample";

#[derive(Clone, Debug)]
pub struct SquaresParams {
    pub alpha: FixedReal,
    pub count: u64,
    /// Truncation for the illustrative square-average comparison (kept
    /// moderate; the double average costs `O(N^2)` products).
    pub average_count: u64,
}

impl Default for SquaresParams {
    fn default() -> Self {
        SquaresParams {
            alpha: FixedReal::sqrt_minus(2, 1),
            count: 100_000,
            average_count: 256,
        }
    }
}

pub fn squares_counterexample(
    params: &SquaresParams,
    table: &ExpectedTable,
) -> Result<ScenarioReport> {
    let mut report = ScenarioReport::new(ID);
    report.input("alpha", &params.alpha);
    report.input("count", params.count);
    report.input("average_count", params.average_count);

    if params.count == 0 {
        report.note("empty", "no samples requested; vacuous pass");
        return Ok(report);
    }

    let gate: alloc::vec::Vec<i64> = alloc::vec![0, 0, 0, 1]; // n^3
    let a = IntegerSequence::Indicator {
        base: Box::new(IntegerSequence::identity()),
        gate_poly: gate.clone(),
        alpha: params.alpha.clone(),
        lo: rat(0, 1),
        hi: rat(1, 3),
    };
    let b = IntegerSequence::Indicator {
        base: Box::new(IntegerSequence::polynomial(&[0, 0, 1])),
        gate_poly: gate,
        alpha: params.alpha.clone(),
        lo: rat(0, 1),
        hi: rat(1, 3),
    };

    // Exact fractional parts of a(n) * b(n) * alpha.
    let mut samples = alloc::vec::Vec::with_capacity(params.count as usize);
    let mut gated = 0u64;
    for n in 1..=params.count {
        let av = BigInt::from(a.eval(n)?);
        let bv = BigInt::from(b.eval(n)?);
        if !av.to_i64().map(|v| v == 0).unwrap_or(false) {
            gated += 1;
        }
        samples.push(params.alpha.frac_times(&(av * bv)));
    }
    report.note("gate_hits", gated);
    let mass = mass_in(&samples, &rat(0, 1), &rat(1, 3), true);
    report.check(
        table,
        "product_phase_mass_on_interval",
        if mass == Rat::one() { 1.0 } else { mass.to_f64().unwrap_or(0.0) },
        format!("exact mass {mass} on [0, 1/3] (closed)"),
    )?;

    // Illustration, no pass/fail: the finite square-average comparison on
    // the skew product with character data.
    if params.average_count > 0 {
        let inst = Instantiation::standard();
        let sys = AffineSystem::skew_product("alpha").instantiate(&inst)?;
        let f = NumericTrigPoly::character(2, &[0, 1]);
        let (lhs, rhs, dist) = square_vs_double_linear_numeric(
            &sys,
            &a,
            &b,
            &f,
            &f,
            &f,
            params.average_count,
        )?;
        report.note("square_average_lhs_norm", format!("{:.6}", lhs.l2_norm()));
        report.note("square_average_rhs_norm", format!("{:.6}", rhs.l2_norm()));
        report.note("square_average_distance", format!("{dist:.6}"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::{CheckKind, Expectation};

    fn table() -> ExpectedTable {
        let mut t = ExpectedTable::new();
        t.insert(
            ID,
            "product_phase_mass_on_interval",
            Expectation {
                value: 1.0,
                tolerance: 0.0,
                kind: CheckKind::Exact,
                provenance: "paper".into(),
                oracle: String::new(),
            },
        );
        t
    }

    use alloc::string::String;

    #[test]
    fn mass_is_exactly_one() {
        let params = SquaresParams {
            alpha: FixedReal::sqrt_minus(2, 1),
            count: 5_000,
            average_count: 32,
        };
        let r = squares_counterexample(&params, &table()).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
        // the gate actually fires on a positive fraction
        let hits: u64 = r
            .notes
            .iter()
            .find(|(k, _)| k == "gate_hits")
            .map(|(_, v)| v.parse().unwrap())
            .unwrap();
        assert!(hits > 1000, "gate hits {hits}");
    }

    #[test]
    fn other_irrational_also_passes() {
        let params = SquaresParams {
            alpha: FixedReal::sqrt_minus(3, 1),
            count: 2_000,
            average_count: 0,
        };
        let r = squares_counterexample(&params, &table()).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn empty_sample_is_vacuous() {
        let params = SquaresParams {
            alpha: FixedReal::sqrt_minus(2, 1),
            count: 0,
            average_count: 0,
        };
        let r = squares_counterexample(&params, &table()).unwrap();
        assert!(r.passed());
        assert!(r.checks.is_empty());
    }
}
