//! Command execution: build the requested objects and evaluate.

use std::collections::BTreeMap;

use num_complex::Complex64;

use ghk_core::averages::{
    convergence_table, multiple_average_finite, multiple_average_numeric,
    multiple_average_symbolic, Weights,
};
use ghk_core::calculus::{
    dual_finite, dual_symbolic_trig, dual_truncated_numeric, seminorm_finite,
    seminorm_finite_truncated, seminorm_symbolic, seminorm_truncated_numeric, u2_via_fft,
};
use ghk_core::scalars::FormalScalar;
use ghk_core::sequences::{
    bohr_recurrence_density, divisibility_density, empirical_distribution, weyl_sum,
    weyl_sum_symbolic, FixedReal, IntegerSequence, PhaseFactor, Transform,
};
use ghk_core::scenarios::{self, ScenarioReport};
use ghk_core::systems::{FiniteSystem, NumericTrigPoly, TrigPolynomial};
use ghk_core::{Error, Result};

use crate::config::{
    build_finite_function, build_sequence, build_system, build_trig_function, rat_from_literal,
    BuiltSystem, CommandKind, RunConfig,
};
use crate::expected;

/// One output row (CSV) / result object (JSON).
#[derive(Clone, Debug)]
pub struct ResultRow {
    pub label: String,
    pub value: Complex64,
    pub norm: f64,
    pub provenance: String,
    pub verdict: String,
    /// Extra key-values for the JSON report.
    pub extra: BTreeMap<String, serde_json::Value>,
}

impl ResultRow {
    fn new(label: &str, value: Complex64, norm: f64) -> Self {
        ResultRow {
            label: label.to_string(),
            value,
            norm,
            provenance: "computed".to_string(),
            verdict: "ok".to_string(),
            extra: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Default)]
pub struct Outcome {
    pub rows: Vec<ResultRow>,
    pub scenarios: Vec<ScenarioReport>,
}

impl Outcome {
    pub fn all_passed(&self) -> bool {
        self.scenarios.iter().all(|s| s.passed())
            && self.rows.iter().all(|r| r.verdict != "fail")
    }
}

pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    match cfg.command {
        CommandKind::Seminorm => seminorm_cmd(cfg),
        CommandKind::Dual => dual_cmd(cfg),
        CommandKind::Average => average_cmd(cfg),
        CommandKind::Equidist => equidist_cmd(cfg),
        CommandKind::Scenario => scenario_cmd(cfg),
        CommandKind::Table => table_cmd(cfg),
    }
}

fn mode_of(cfg: &RunConfig) -> &str {
    cfg.params.mode.as_deref().unwrap_or("cyclic-exact")
}

fn first_function(cfg: &RunConfig) -> Result<&crate::config::FunctionSpec> {
    cfg.functions
        .first()
        .ok_or_else(|| Error::Precondition("this command needs a function".into()))
}

fn seminorm_cmd(cfg: &RunConfig) -> Result<Outcome> {
    let degree = cfg.params.s.unwrap_or(2);
    let inst = cfg.instantiation()?;
    let mut out = Outcome::default();
    match (build_system(cfg)?, mode_of(cfg)) {
        (BuiltSystem::Cyclic(sys), "cyclic-exact") => {
            let f = build_finite_function(first_function(cfg)?, sys.size(), Some(&sys))?;
            let v = seminorm_finite(&sys, &f, degree)?;
            let mut row = ResultRow::new("seminorm", v.power, v.value);
            if degree == 2 && sys.is_ergodic() {
                let fast = u2_via_fft(&sys, &f)?;
                row.extra
                    .insert("u2_fft".into(), serde_json::json!(fast));
            }
            out.rows.push(row);
        }
        (BuiltSystem::Product(sys), "cyclic-exact") => {
            let f = build_finite_function(first_function(cfg)?, sys.size(), None)?;
            let v = seminorm_finite(&sys, &f, degree)?;
            out.rows.push(ResultRow::new("seminorm", v.power, v.value));
        }
        (BuiltSystem::Cyclic(sys), "truncated") => {
            let width = cfg.params.h.unwrap_or(64);
            let f = build_finite_function(first_function(cfg)?, sys.size(), Some(&sys))?;
            let v = seminorm_finite_truncated(&sys, &f, degree, width)?;
            out.rows.push(ResultRow::new("seminorm", v.power, v.value));
        }
        (BuiltSystem::Affine(sys), "symbolic") => {
            let f = build_trig_function(first_function(cfg)?, sys.dim())?;
            let v = seminorm_symbolic(&sys, &f, degree, &inst)?;
            let power = v.power.eval(&inst)?;
            let mut row = ResultRow::new("seminorm", power, v.value);
            row.extra
                .insert("power_exact".into(), serde_json::json!(format!("{}", v.power)));
            row.extra
                .insert("exact_zero".into(), serde_json::json!(v.is_exact_zero()));
            row.extra
                .insert("reality_check".into(), serde_json::json!(v.reality));
            row.extra.insert(
                "census".into(),
                serde_json::json!({
                    "kept": v.census.kept,
                    "dropped_variable_freq": v.census.dropped_variable_freq,
                    "dropped_nonzero_freq": v.census.dropped_nonzero_freq,
                    "dropped_weyl": v.census.dropped_weyl,
                }),
            );
            out.rows.push(row);
        }
        (BuiltSystem::Affine(sys), "truncated") => {
            let width = cfg.params.h.unwrap_or(64);
            let f = build_trig_function(first_function(cfg)?, sys.dim())?;
            let nsys = sys.instantiate(&inst)?;
            let nf = NumericTrigPoly::from_exact(&f, &inst)?;
            let v = seminorm_truncated_numeric(&nsys, &nf, degree, width)?;
            out.rows.push(ResultRow::new("seminorm", v.power, v.value));
        }
        (_, mode) => {
            return Err(Error::UnsupportedRepresentation(format!(
                "seminorm mode `{mode}` is not available on this system kind"
            )))
        }
    }
    Ok(out)
}

fn dual_cmd(cfg: &RunConfig) -> Result<Outcome> {
    let level = cfg.params.s.unwrap_or(2);
    let inst = cfg.instantiation()?;
    let mut out = Outcome::default();
    match (build_system(cfg)?, mode_of(cfg)) {
        (BuiltSystem::Cyclic(sys), "cyclic-exact") => {
            let f = build_finite_function(first_function(cfg)?, sys.size(), Some(&sys))?;
            let d = dual_finite(&sys, &f, level)?;
            out.rows
                .push(ResultRow::new("dual", d.integral(), d.l2_norm()));
        }
        (BuiltSystem::Product(sys), "cyclic-exact") => {
            let f = build_finite_function(first_function(cfg)?, sys.size(), None)?;
            let d = dual_finite(&sys, &f, level)?;
            out.rows
                .push(ResultRow::new("dual", d.integral(), d.l2_norm()));
        }
        (BuiltSystem::Affine(sys), "symbolic") => {
            let f = build_trig_function(first_function(cfg)?, sys.dim())?;
            let (d, census) = dual_symbolic_trig(&sys, &f, level)?;
            let mut row = ResultRow::new("dual", d.integral().eval(&inst)?, d.l2_norm(&inst)?);
            row.extra
                .insert("terms".into(), serde_json::json!(trig_terms_json(&d)));
            row.extra.insert(
                "census".into(),
                serde_json::json!({
                    "kept": census.kept,
                    "dropped_variable_freq": census.dropped_variable_freq,
                    "dropped_weyl": census.dropped_weyl,
                }),
            );
            out.rows.push(row);
        }
        (BuiltSystem::Affine(sys), "truncated") => {
            let width = cfg.params.m.unwrap_or(64);
            let f = build_trig_function(first_function(cfg)?, sys.dim())?;
            let nsys = sys.instantiate(&inst)?;
            let nf = NumericTrigPoly::from_exact(&f, &inst)?;
            let d = dual_truncated_numeric(&nsys, &nf, level, width)?;
            out.rows
                .push(ResultRow::new("dual", d.integral(), d.l2_norm()));
        }
        (_, mode) => {
            return Err(Error::UnsupportedRepresentation(format!(
                "dual mode `{mode}` is not available on this system kind"
            )))
        }
    }
    Ok(out)
}

fn trig_terms_json(f: &TrigPolynomial) -> Vec<serde_json::Value> {
    f.terms()
        .map(|(k, a)| {
            serde_json::json!({
                "frequency": k,
                "amplitude": format!("{a}"),
            })
        })
        .collect()
}

fn weights_of(cfg: &RunConfig) -> Weights {
    match &cfg.params.weights {
        Some(w) => Weights::Table(w.iter().map(|[re, im]| Complex64::new(*re, *im)).collect()),
        None => Weights::Unit,
    }
}

fn average_cmd(cfg: &RunConfig) -> Result<Outcome> {
    let count = cfg.params.n.unwrap_or(128);
    let inst = cfg.instantiation()?;
    if cfg.sequences.len() != cfg.functions.len() || cfg.functions.is_empty() {
        return Err(Error::Precondition(
            "average needs one sequence per function".into(),
        ));
    }
    let seqs: Vec<IntegerSequence> = cfg
        .sequences
        .iter()
        .map(build_sequence)
        .collect::<Result<_>>()?;
    let mut out = Outcome::default();
    match (build_system(cfg)?, mode_of(cfg)) {
        (BuiltSystem::Cyclic(sys), "cyclic-exact" | "finite") => {
            let fs: Vec<_> = cfg
                .functions
                .iter()
                .map(|s| build_finite_function(s, sys.size(), Some(&sys)))
                .collect::<Result<_>>()?;
            let items: Vec<_> = seqs.iter().zip(fs.iter()).collect();
            let (avg, norm) = multiple_average_finite(&sys, &items, count, &weights_of(cfg))?;
            out.rows
                .push(ResultRow::new("average", avg.integral(), norm));
        }
        (BuiltSystem::Product(sys), "cyclic-exact" | "finite") => {
            let fs: Vec<_> = cfg
                .functions
                .iter()
                .map(|s| build_finite_function(s, sys.size(), None))
                .collect::<Result<_>>()?;
            let items: Vec<_> = seqs.iter().zip(fs.iter()).collect();
            let (avg, norm) = multiple_average_finite(&sys, &items, count, &weights_of(cfg))?;
            out.rows
                .push(ResultRow::new("average", avg.integral(), norm));
        }
        (BuiltSystem::Affine(sys), "finite" | "truncated") => {
            let nsys = sys.instantiate(&inst)?;
            let fs: Vec<NumericTrigPoly> = cfg
                .functions
                .iter()
                .map(|s| {
                    build_trig_function(s, sys.dim())
                        .and_then(|f| NumericTrigPoly::from_exact(&f, &inst))
                })
                .collect::<Result<_>>()?;
            let items: Vec<_> = seqs.iter().zip(fs.iter()).collect();
            let (avg, norm) = multiple_average_numeric(&nsys, &items, count, &weights_of(cfg))?;
            out.rows
                .push(ResultRow::new("average", avg.integral(), norm));
        }
        (BuiltSystem::Affine(sys), "symbolic") => {
            let fs: Vec<TrigPolynomial> = cfg
                .functions
                .iter()
                .map(|s| build_trig_function(s, sys.dim()))
                .collect::<Result<_>>()?;
            let items: Vec<_> = seqs.iter().zip(fs.iter()).collect();
            let (limit, census) = multiple_average_symbolic(&sys, &items)?;
            let mut row = ResultRow::new(
                "average_limit",
                limit.integral().eval(&inst)?,
                limit.l2_norm(&inst)?,
            );
            row.extra
                .insert("terms".into(), serde_json::json!(trig_terms_json(&limit)));
            row.extra.insert(
                "census".into(),
                serde_json::json!({
                    "kept": census.kept,
                    "dropped_variable_freq": census.dropped_variable_freq,
                    "dropped_weyl": census.dropped_weyl,
                }),
            );
            out.rows.push(row);
        }
        (_, mode) => {
            return Err(Error::UnsupportedRepresentation(format!(
                "average mode `{mode}` is not available on this system kind"
            )))
        }
    }
    Ok(out)
}

fn parse_phase_factor(s: &str) -> Result<PhaseFactor> {
    if s.contains("sqrt") {
        Ok(PhaseFactor::Real(FixedReal::parse(s)?))
    } else {
        Ok(PhaseFactor::Rational(rat_from_literal(s)?))
    }
}

fn equidist_cmd(cfg: &RunConfig) -> Result<Outcome> {
    let seq_spec = cfg
        .sequences
        .first()
        .ok_or_else(|| Error::Precondition("equidist needs a sequence".into()))?;
    let seq = build_sequence(seq_spec)?;
    let count = cfg.params.n.unwrap_or(10_000);
    let statistic = cfg.params.statistic.as_deref().unwrap_or("distribution");
    let mut out = Outcome::default();
    match statistic {
        "distribution" => {
            let t = parse_phase_factor(cfg.params.t.as_deref().unwrap_or("sqrt(2)-1"))?;
            let power = cfg.params.power.unwrap_or(1);
            let transform = if power == 1 {
                Transform::Linear(t)
            } else {
                Transform::Power { power, factor: t }
            };
            let bins = cfg.params.bins.unwrap_or(16);
            let dist = empirical_distribution(&seq, &transform, count, bins)?;
            let mut row = ResultRow::new(
                "distribution",
                Complex64::new(dist.star_discrepancy, 0.0),
                dist.star_discrepancy,
            );
            row.extra
                .insert("frequencies".into(), serde_json::json!(dist.frequencies));
            out.rows.push(row);
        }
        "weyl_sum" => {
            let t_raw = cfg.params.t.as_deref().unwrap_or("sqrt(2)-1");
            if mode_of(cfg) == "symbolic" {
                let symbols = cfg.symbol_names();
                let t = FormalScalar::parse(t_raw, &symbols)?;
                let v = weyl_sum_symbolic(&seq, &t)?;
                let inst = cfg.instantiation()?;
                let num = v.eval(&inst)?;
                let mut row = ResultRow::new("weyl_sum_limit", num, num.norm());
                row.extra
                    .insert("exact".into(), serde_json::json!(format!("{v}")));
                out.rows.push(row);
            } else {
                let t = parse_phase_factor(t_raw)?;
                let v = weyl_sum(&seq, &t, count)?;
                out.rows.push(ResultRow::new("weyl_sum", v, v.norm()));
            }
        }
        "divisibility" => {
            let r = cfg.params.r.unwrap_or(2);
            let v = divisibility_density(&seq, r, count)?;
            out.rows
                .push(ResultRow::new("divisibility", Complex64::new(v, 0.0), v));
        }
        "bohr" => {
            let eps = cfg.params.epsilon.unwrap_or(0.05);
            let alphas = cfg
                .params
                .alphas
                .as_ref()
                .ok_or_else(|| Error::Precondition("bohr needs params.alphas".into()))?
                .iter()
                .map(|a| FixedReal::parse(a))
                .collect::<Result<Vec<_>>>()?;
            let v = bohr_recurrence_density(&seq, &alphas, eps, count)?;
            out.rows
                .push(ResultRow::new("bohr_recurrence", Complex64::new(v, 0.0), v));
        }
        other => {
            return Err(Error::Precondition(format!(
                "unknown statistic `{other}`"
            )))
        }
    }
    Ok(out)
}

fn scenario_cmd(cfg: &RunConfig) -> Result<Outcome> {
    let name = cfg.params.scenario.as_deref().unwrap();
    let table = expected::load(cfg.params.expected_values.as_deref())?;
    let inst = cfg.instantiation()?;
    let report = match name {
        "dual_vanishing" => {
            let k = cfg.params.k.unwrap_or(1);
            let params = match &cfg.params.coefficients {
                Some(cs) => scenarios::DualVanishingParams {
                    k,
                    coefficients: cs
                        .iter()
                        .map(|c| rat_from_literal(c))
                        .collect::<Result<_>>()?,
                },
                None => scenarios::DualVanishingParams::with_unit_coefficients(k),
            };
            scenarios::dual_vanishing(&params, &table, &inst)?
        }
        "key_estimate" => {
            let mode = match mode_of(cfg) {
                "symbolic" | "cyclic-exact" => scenarios::KeyEstimateMode::Symbolic,
                "truncated" => scenarios::KeyEstimateMode::Truncated {
                    modulus: cfg.params.n.unwrap_or(32) as usize,
                    seed: cfg.params.seed.unwrap_or(1),
                },
                other => {
                    return Err(Error::Precondition(format!(
                        "unknown key_estimate mode `{other}`"
                    )))
                }
            };
            scenarios::key_estimate(
                &scenarios::KeyEstimateParams {
                    d: cfg.params.d.unwrap_or(1),
                    s: cfg.params.s.unwrap_or(1),
                    mode,
                },
                &table,
            )?
        }
        "squares_counterexample" => scenarios::squares_counterexample(
            &scenarios::SquaresParams {
                alpha: FixedReal::parse(cfg.params.alpha.as_deref().unwrap_or("sqrt(2)-1"))?,
                count: cfg.params.n.unwrap_or(100_000),
                average_count: cfg.params.average_count.unwrap_or(256),
            },
            &table,
        )?,
        "bad_enumeration" => scenarios::bad_enumeration(
            &scenarios::BadEnumerationParams {
                power: cfg.params.power.unwrap_or(2),
                alpha: FixedReal::parse(cfg.params.alpha.as_deref().unwrap_or("sqrt(2)-1"))?,
                count: cfg.params.n.unwrap_or(10_000),
                scan_bound: cfg
                    .params
                    .scan_bound
                    .unwrap_or(ghk_core::ENUMERATION_SCAN_BOUND),
            },
            &table,
        )?,
        "seminorm_laws" => scenarios::seminorm_laws(
            &scenarios::SeminormLawsParams {
                modulus: cfg.params.n.unwrap_or(32) as usize,
                trials: cfg.params.trials.unwrap_or(200),
                seed: cfg.params.seed.unwrap_or(1),
            },
            &table,
        )?,
        "lower_lemma" => scenarios::lower_lemma(
            &scenarios::LowerLemmaParams {
                degree: cfg.params.s.unwrap_or(2),
                widths: cfg.params.widths.clone().unwrap_or_else(|| vec![8, 16, 32]),
                function: match cfg.params.function.as_deref().unwrap_or("character") {
                    "one" => scenarios::LowerLemmaFunction::One,
                    _ => scenarios::LowerLemmaFunction::SkewCharacter,
                },
            },
            &table,
        )?,
        other => {
            return Err(Error::Precondition(format!("unknown scenario `{other}`")))
        }
    };
    let mut out = Outcome::default();
    for c in &report.checks {
        let mut row = ResultRow::new(
            &format!("{}::{}", report.id, c.name),
            Complex64::new(c.computed, 0.0),
            c.expected,
        );
        row.provenance = c.provenance.clone();
        row.verdict = if c.passed { "pass" } else { "fail" }.to_string();
        row.extra
            .insert("detail".into(), serde_json::json!(c.detail));
        row.extra
            .insert("kind".into(), serde_json::json!(c.kind.as_str()));
        row.extra
            .insert("tolerance".into(), serde_json::json!(c.tolerance));
        out.rows.push(row);
    }
    out.scenarios.push(report);
    Ok(out)
}

fn table_cmd(cfg: &RunConfig) -> Result<Outcome> {
    let counts = cfg
        .params
        .counts
        .clone()
        .ok_or_else(|| Error::Precondition("table needs params.counts".into()))?;
    let quantity = cfg.params.quantity.as_deref().unwrap_or("average_norm");
    let inst = cfg.instantiation()?;
    let mut out = Outcome::default();
    match quantity {
        "average_norm" => {
            let seqs: Vec<IntegerSequence> = cfg
                .sequences
                .iter()
                .map(build_sequence)
                .collect::<Result<_>>()?;
            if seqs.len() != cfg.functions.len() || seqs.is_empty() {
                return Err(Error::Precondition(
                    "table needs one sequence per function".into(),
                ));
            }
            let rows = match build_system(cfg)? {
                BuiltSystem::Cyclic(sys) => {
                    let fs: Vec<_> = cfg
                        .functions
                        .iter()
                        .map(|s| build_finite_function(s, sys.size(), Some(&sys)))
                        .collect::<Result<_>>()?;
                    let items: Vec<_> = seqs.iter().zip(fs.iter()).collect();
                    convergence_table(
                        |n| {
                            multiple_average_finite(&sys, &items, n, &Weights::Unit)
                                .map(|(_, norm)| norm)
                        },
                        &counts,
                    )?
                }
                BuiltSystem::Product(sys) => {
                    let fs: Vec<_> = cfg
                        .functions
                        .iter()
                        .map(|s| build_finite_function(s, sys.size(), None))
                        .collect::<Result<_>>()?;
                    let items: Vec<_> = seqs.iter().zip(fs.iter()).collect();
                    convergence_table(
                        |n| {
                            multiple_average_finite(&sys, &items, n, &Weights::Unit)
                                .map(|(_, norm)| norm)
                        },
                        &counts,
                    )?
                }
                BuiltSystem::Affine(sys) => {
                    let nsys = sys.instantiate(&inst)?;
                    let fs: Vec<NumericTrigPoly> = cfg
                        .functions
                        .iter()
                        .map(|s| {
                            build_trig_function(s, sys.dim())
                                .and_then(|f| NumericTrigPoly::from_exact(&f, &inst))
                        })
                        .collect::<Result<_>>()?;
                    let items: Vec<_> = seqs.iter().zip(fs.iter()).collect();
                    convergence_table(
                        |n| {
                            multiple_average_numeric(&nsys, &items, n, &Weights::Unit)
                                .map(|(_, norm)| norm)
                        },
                        &counts,
                    )?
                }
            };
            for (n, v) in rows {
                out.rows.push(ResultRow::new(
                    &format!("average_norm[{n}]"),
                    Complex64::new(v, 0.0),
                    v,
                ));
            }
        }
        "seminorm_power" => {
            let degree = cfg.params.s.unwrap_or(2);
            let BuiltSystem::Affine(sys) = build_system(cfg)? else {
                return Err(Error::UnsupportedRepresentation(
                    "seminorm_power tables run on affine systems".into(),
                ));
            };
            let f = build_trig_function(first_function(cfg)?, sys.dim())?;
            let nsys = sys.instantiate(&inst)?;
            let nf = NumericTrigPoly::from_exact(&f, &inst)?;
            let rows = convergence_table(
                |n| {
                    seminorm_truncated_numeric(&nsys, &nf, degree, n as usize)
                        .map(|v| v.power.norm())
                },
                &counts,
            )?;
            for (n, v) in rows {
                out.rows.push(ResultRow::new(
                    &format!("seminorm_power[{n}]"),
                    Complex64::new(v, 0.0),
                    v,
                ));
            }
        }
        other => {
            return Err(Error::Precondition(format!(
                "unknown table quantity `{other}`"
            )))
        }
    }
    Ok(out)
}
