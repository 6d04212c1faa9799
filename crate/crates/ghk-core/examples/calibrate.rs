//! One-shot oracle run for the truncated thresholds in the expected-values
//! table: executes the decay scenarios with permissive bounds and prints the
//! measured quantities. The committed thresholds in
//! `crates/ghk-cli/data/expected_values.json` were produced by this command
//! (recorded in their `oracle` fields) with modest headroom on top.

use ghk_core::scenarios::*;
use ghk_core::sequences::FixedReal;

fn permissive() -> ExpectedTable {
    let mut t = ExpectedTable::new();
    let entry = |kind: CheckKind| Expectation {
        value: if kind == CheckKind::AtMost {
            f64::INFINITY
        } else {
            0.0
        },
        tolerance: 0.0,
        kind,
        provenance: "derived".into(),
        oracle: "calibration".into(),
    };
    for (s, c, k) in [
        ("key_estimate", "truncated_d1_s0_h32_below", CheckKind::AtMost),
        ("key_estimate", "truncated_d2_s0_h32_below", CheckKind::AtMost),
        ("key_estimate", "truncated_d1_s1_h32_below", CheckKind::AtMost),
        ("key_estimate", "truncated_d2_s1_h32_below", CheckKind::AtMost),
        ("lower_lemma", "hypothesis_seminorm1_power", CheckKind::Exact),
        ("lower_lemma", "hypothesis_seminorm2_power", CheckKind::Exact),
        ("lower_lemma", "twisted_norm_final_below_s1", CheckKind::AtMost),
        ("lower_lemma", "twisted_norm_final_below_s2", CheckKind::AtMost),
        ("bad_enumeration", "strictly_increasing", CheckKind::Exact),
        ("bad_enumeration", "power_probe_mass_on_window", CheckKind::Exact),
        (
            "bad_enumeration",
            "linear_probe_discrepancy_below",
            CheckKind::AtMost,
        ),
    ] {
        let mut e = entry(k);
        if c == "power_probe_mass_on_window" {
            e.value = 1.0;
        }
        t.insert(s, c, e);
    }
    t
}

fn main() {
    let table = permissive();

    for (d, s) in [(1, 0), (2, 0), (1, 1), (2, 1)] {
        let r = key_estimate(
            &KeyEstimateParams {
                d,
                s,
                mode: KeyEstimateMode::Truncated {
                    modulus: 32,
                    seed: 1,
                },
            },
            &table,
        )
        .unwrap();
        println!("key_estimate d={d} s={s} (N=32, seed=1):");
        for (k, v) in &r.notes {
            println!("  {k} = {v}");
        }
    }

    for degree in [1, 2] {
        let r = lower_lemma(
            &LowerLemmaParams {
                degree,
                widths: vec![8, 16, 32],
                function: LowerLemmaFunction::SkewCharacter,
            },
            &table,
        )
        .unwrap();
        println!("lower_lemma s={degree}:");
        for (k, v) in &r.notes {
            println!("  {k} = {v}");
        }
    }

    let r = bad_enumeration(
        &BadEnumerationParams {
            power: 2,
            alpha: FixedReal::sqrt_minus(2, 1),
            count: 10_000,
            scan_bound: ghk_core::ENUMERATION_SCAN_BOUND,
        },
        &table,
    )
    .unwrap();
    println!("bad_enumeration power=2 count=10000:");
    for (k, v) in &r.notes {
        println!("  {k} = {v}");
    }
}
