//! Loading the expected-values table (scenario, check) -> expectation.
//!
//! The canonical table ships with the binary (`data/expected_values.json`);
//! a config may point at an override file. Entries record the expected
//! value, comparison kind, tolerance, provenance tag, and — for
//! oracle-calibrated thresholds — the command that produced them.

use std::collections::BTreeMap;

use serde::Deserialize;

use ghk_core::scenarios::{CheckKind, Expectation, ExpectedTable};
use ghk_core::{Error, Result};

pub const BUILTIN: &str = include_str!("../data/expected_values.json");

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntrySpec {
    value: f64,
    #[serde(default)]
    tolerance: f64,
    kind: String,
    provenance: String,
    #[serde(default)]
    oracle: String,
}

pub fn parse(raw: &str) -> Result<ExpectedTable> {
    let spec: BTreeMap<String, BTreeMap<String, EntrySpec>> = serde_json::from_str(raw)
        .map_err(|e| Error::Precondition(format!("expected-values table: {e}")))?;
    let mut table = ExpectedTable::new();
    for (scenario, checks) in spec {
        for (check, e) in checks {
            table.insert(
                &scenario,
                &check,
                Expectation {
                    value: e.value,
                    tolerance: e.tolerance,
                    kind: CheckKind::parse(&e.kind)?,
                    provenance: e.provenance,
                    oracle: e.oracle,
                },
            );
        }
    }
    table.validate()?;
    Ok(table)
}

/// The built-in table, or an override file.
pub fn load(override_path: Option<&str>) -> Result<ExpectedTable> {
    match override_path {
        Some(path) => {
            let raw = std::fs::read_to_string(path).map_err(|e| {
                Error::Precondition(format!("cannot read expected-values file {path}: {e}"))
            })?;
            parse(&raw)
        }
        None => parse(BUILTIN),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_table_parses_and_validates() {
        let t = load(None).unwrap();
        // every scenario the dispatcher knows must be covered
        for scenario in [
            "dual_vanishing",
            "key_estimate",
            "squares_counterexample",
            "bad_enumeration",
            "seminorm_laws",
            "lower_lemma",
        ] {
            assert!(
                t.iter().any(|((s, _), _)| s == scenario),
                "no entries for {scenario}"
            );
        }
    }

    #[test]
    fn provenance_tags_are_mandatory() {
        let raw = r#"{"x": {"y": {"value": 0.0, "kind": "exact", "provenance": "guesswork"}}}"#;
        assert!(parse(raw).is_err());
    }
}
