//! The enumeration counterexample: `a` lists, in increasing order, the set
//! `{ n : {n^l alpha} in [1/4, 3/4] }` (equivalently, distance to the
//! nearest integer in `[1/4, 1/2]`). By construction every `{a(n)^l alpha}`
//! stays in that window — the degree-`l` phase probe is maximally
//! non-equidistributed — while the lower-degree probes look equidistributed
//! (reported via the star discrepancy of `{a(n) alpha}`).

use alloc::format;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::scalars::{rat, Rat};
use crate::sequences::{
    empirical_distribution, mass_in, EnumerationSeq, FixedReal, IntegerSequence, PhaseFactor,
    Transform,
};
use crate::scenarios::{ExpectedTable, ScenarioReport};
use crate::Result;

pub const ID: &str = "bad_enumeration";

#[derive(Clone, Debug)]
pub struct BadEnumerationParams {
    /// Probe degree `l` (1..=3).
    pub power: u32,
    pub alpha: FixedReal,
    /// Number of enumerated elements to test.
    pub count: u64,
    pub scan_bound: u64,
}

impl Default for BadEnumerationParams {
    fn default() -> Self {
        BadEnumerationParams {
            power: 2,
            alpha: FixedReal::sqrt_minus(2, 1),
            count: 10_000,
            scan_bound: crate::ENUMERATION_SCAN_BOUND,
        }
    }
}

pub fn bad_enumeration(
    params: &BadEnumerationParams,
    table: &ExpectedTable,
) -> Result<ScenarioReport> {
    if !(1..=3).contains(&params.power) {
        return Err(crate::Error::Precondition(
            "probe degree must be in 1..=3".into(),
        ));
    }
    if params.count > 100_000 {
        return Err(crate::Error::Precondition(
            "enumeration scenario capped at 1e5 elements".into(),
        ));
    }
    let mut report = ScenarioReport::new(ID);
    report.input("power", params.power);
    report.input("alpha", &params.alpha);
    report.input("count", params.count);

    if params.count == 0 {
        report.note("empty", "no elements requested; vacuous pass");
        return Ok(report);
    }

    let enumeration = EnumerationSeq::new(
        params.power,
        params.alpha.clone(),
        rat(1, 4),
        rat(3, 4),
        params.count as usize,
        params.scan_bound,
    )?;
    let seq = IntegerSequence::Enumeration(enumeration);
    let values = seq.eval_range(params.count)?;
    report.note("last_element", values.last().copied().unwrap_or(0));

    // (a) strict monotonicity, exact.
    let violations = values.windows(2).filter(|w| w[0] >= w[1]).count();
    report.check(
        table,
        "strictly_increasing",
        violations as f64,
        format!("{violations} order violations among {} elements", values.len()),
    )?;

    // (b) the degree-l probe mass on [1/4, 3/4] is exactly 1.
    let mut samples = alloc::vec::Vec::with_capacity(values.len());
    for &v in &values {
        samples.push(params.alpha.frac_times(&BigInt::from(v).pow(params.power)));
    }
    let mass = mass_in(&samples, &rat(1, 4), &rat(3, 4), true);
    report.check(
        table,
        "power_probe_mass_on_window",
        if mass == Rat::one() { 1.0 } else { mass.to_f64().unwrap_or(0.0) },
        format!("exact mass {mass} on [1/4, 3/4] for the degree-{} probe", params.power),
    )?;

    // (c) star discrepancy of the linear probe {a(n) alpha}: for l >= 2 the
    // lower-degree probe looks equidistributed.
    let dist = empirical_distribution(
        &seq,
        &Transform::Linear(PhaseFactor::Real(params.alpha.clone())),
        params.count,
        16,
    )?;
    report.note(
        "linear_probe_star_discrepancy",
        format!("{:.6}", dist.star_discrepancy),
    );
    if params.power == 2 && params.count >= 10_000 {
        report.check(
            table,
            "linear_probe_discrepancy_below",
            dist.star_discrepancy,
            "star discrepancy of {a(n) alpha}",
        )?;
    }
    Ok(report)
}
