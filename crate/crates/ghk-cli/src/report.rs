//! Report emission: CSV with fixed columns, or JSON mirroring the scenario
//! reports. Files are written atomically (temp file + rename), rows in
//! deterministic order, numbers with 12 significant digits in CSV.

use std::io::Write;
use std::path::Path;

use ghk_core::scenarios::ScenarioReport;

use crate::config::RunConfig;
use crate::dispatch::Outcome;
use crate::CliError;

/// Deterministic run id: FNV-1a over the canonicalized config.
pub fn run_id(cfg: &RunConfig) -> String {
    let canonical = serde_json::to_string(&strip_nulls(
        serde_json::to_value(cfg).expect("config serializes"),
    ))
    .expect("value serializes");
    let mut hash: u64 = 0xcbf29ce484222325;
    for b in canonical.as_bytes() {
        hash ^= *b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

fn strip_nulls(v: serde_json::Value) -> serde_json::Value {
    match v {
        serde_json::Value::Object(map) => serde_json::Value::Object(
            map.into_iter()
                .filter(|(_, v)| !v.is_null())
                .map(|(k, v)| (k, strip_nulls(v)))
                .collect(),
        ),
        serde_json::Value::Array(items) => {
            serde_json::Value::Array(items.into_iter().map(strip_nulls).collect())
        }
        other => other,
    }
}

/// 12 significant digits.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000000e0".to_string();
    }
    format!("{x:.11e}")
}

fn atomic_write(path: &Path, contents: &str) -> Result<(), CliError> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = std::fs::File::create(&tmp).map_err(|e| CliError {
            exit_code: 2,
            message: format!("cannot create {}: {e}", tmp.display()),
        })?;
        f.write_all(contents.as_bytes()).map_err(|e| CliError {
            exit_code: 2,
            message: format!("cannot write {}: {e}", tmp.display()),
        })?;
        f.sync_all().ok();
    }
    std::fs::rename(&tmp, path).map_err(|e| CliError {
        exit_code: 2,
        message: format!("cannot move report into place at {}: {e}", path.display()),
    })?;
    Ok(())
}

fn params_json(cfg: &RunConfig, label: &str) -> String {
    let mut v = strip_nulls(serde_json::to_value(&cfg.params).expect("params serialize"));
    if let serde_json::Value::Object(map) = &mut v {
        map.insert("label".into(), serde_json::json!(label));
    }
    serde_json::to_string(&v).expect("value serializes")
}

/// CSV columns: run_id, command, param_json, value_re, value_im, norm,
/// provenance, verdict.
pub fn write_csv(path: &Path, cfg: &RunConfig, outcome: &Outcome) -> Result<(), CliError> {
    let id = run_id(cfg);
    let mut out = String::new();
    out.push_str("run_id,command,param_json,value_re,value_im,norm,provenance,verdict\n");
    for row in &outcome.rows {
        let params = params_json(cfg, &row.label).replace('"', "\"\"");
        out.push_str(&format!(
            "{id},{},\"{params}\",{},{},{},{},{}\n",
            cfg.command.as_str(),
            sig12(row.value.re),
            sig12(row.value.im),
            sig12(row.norm),
            row.provenance,
            row.verdict
        ));
    }
    atomic_write(path, &out)
}

fn scenario_json(report: &ScenarioReport) -> serde_json::Value {
    serde_json::json!({
        "id": report.id,
        "passed": report.passed(),
        "inputs": report.inputs.iter().map(|(k, v)| serde_json::json!({k: v})).collect::<Vec<_>>(),
        "checks": report.checks.iter().map(|c| serde_json::json!({
            "name": c.name,
            "computed": c.computed,
            "expected": c.expected,
            "tolerance": c.tolerance,
            "kind": c.kind.as_str(),
            "provenance": c.provenance,
            "detail": c.detail,
            "passed": c.passed,
        })).collect::<Vec<_>>(),
        "notes": report.notes.iter().map(|(k, v)| serde_json::json!({k: v})).collect::<Vec<_>>(),
    })
}

pub fn write_json(path: &Path, cfg: &RunConfig, outcome: &Outcome) -> Result<(), CliError> {
    let rows: Vec<serde_json::Value> = outcome
        .rows
        .iter()
        .map(|r| {
            serde_json::json!({
                "label": r.label,
                "value_re": r.value.re,
                "value_im": r.value.im,
                "norm": r.norm,
                "provenance": r.provenance,
                "verdict": r.verdict,
                "extra": r.extra,
            })
        })
        .collect();
    let doc = serde_json::json!({
        "run_id": run_id(cfg),
        "command": cfg.command.as_str(),
        "config": strip_nulls(serde_json::to_value(cfg).expect("config serializes")),
        "results": rows,
        "scenarios": outcome.scenarios.iter().map(scenario_json).collect::<Vec<_>>(),
        "passed": outcome.all_passed(),
    });
    let pretty = serde_json::to_string_pretty(&doc).expect("report serializes");
    atomic_write(path, &pretty)
}
