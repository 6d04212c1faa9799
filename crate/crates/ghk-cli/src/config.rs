//! The JSON run-configuration schema. Unknown keys are rejected everywhere;
//! bounds are validated before execution.

use serde::{Deserialize, Serialize};

use ghk_core::scalars::{parse_rat, FormalScalar, Instantiation, IntPoly, Rat};
use ghk_core::sequences::{EnumerationSeq, FixedReal, IntegerSequence};
use ghk_core::systems::{
    AffineSystem, CyclicProduct, CyclicSystem, CyclicFunction, TrigPolynomial,
};
use ghk_core::scalars::ExactComplex;
use ghk_core::{Error, Result};
use num_complex::Complex64;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: CommandKind,
    /// Declared formal irrational symbols, in order.
    #[serde(default)]
    pub symbols: Vec<String>,
    /// Numeric instantiation overrides per symbol (real literals like
    /// `sqrt(2)-1`); unlisted symbols get the standard values.
    #[serde(default)]
    pub instantiate: std::collections::BTreeMap<String, String>,
    #[serde(default)]
    pub system: Option<SystemSpec>,
    #[serde(default)]
    pub functions: Vec<FunctionSpec>,
    #[serde(default)]
    pub sequences: Vec<SequenceSpec>,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub output: Option<OutputSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CommandKind {
    Seminorm,
    Dual,
    Average,
    Equidist,
    Scenario,
    Table,
}

impl CommandKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CommandKind::Seminorm => "seminorm",
            CommandKind::Dual => "dual",
            CommandKind::Average => "average",
            CommandKind::Equidist => "equidist",
            CommandKind::Scenario => "scenario",
            CommandKind::Table => "table",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SystemSpec {
    /// `x -> x + step (mod modulus)` on `Z_modulus`.
    Cyclic { modulus: usize, step: i64 },
    /// Finite product of cyclic shifts.
    CyclicProduct { factors: Vec<CyclicFactor> },
    /// `x -> Ax + b` on `T^d`, `A` unipotent; translation entries are
    /// formal-scalar literals over the declared symbols.
    Affine {
        matrix: Vec<Vec<i64>>,
        translation: Vec<String>,
    },
    /// The skew product `(x1, x2) -> (x1 + alpha, x2 + 2 x1 + alpha)`.
    SkewProduct,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CyclicFactor {
    pub modulus: usize,
    pub step: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionSpec {
    /// Constant 1.
    One,
    /// Finite backend: explicit complex values, one `[re, im]` per point.
    Values { values: Vec<[f64; 2]> },
    /// Finite backend: indicator of a set of indices.
    Indicator { set: Vec<usize> },
    /// Finite backend: the character `x -> e(x xi / N)` (cyclic only).
    CyclicCharacter { xi: i64 },
    /// Affine backend: a single character `chi_k`.
    Character { frequency: Vec<i64> },
    /// Affine backend: a trig polynomial with exact amplitudes.
    Trig { terms: Vec<TrigTermSpec> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrigTermSpec {
    pub frequency: Vec<i64>,
    /// Either a rational literal like `"1/2"` or a pair `{re, im}` of
    /// rational literals.
    pub amplitude: AmplitudeSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AmplitudeSpec {
    Literal(String),
    Complex { re: String, im: String },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SequenceSpec {
    Polynomial {
        coeffs: Vec<i64>,
    },
    FloorPower {
        num: u32,
        den: u32,
    },
    Indicator {
        base: Box<SequenceSpec>,
        gate_poly: Vec<i64>,
        alpha: String,
        interval: [String; 2],
    },
    Enumeration {
        power: u32,
        alpha: String,
        interval: [String; 2],
        count: usize,
        #[serde(default)]
        scan_bound: Option<u64>,
    },
    Table {
        values: Vec<i64>,
    },
    /// One integer per line.
    TableFile {
        path: String,
    },
    /// Multivariate integer polynomial over the box variables `n1..nk`,
    /// for Følner-box averages: `sum_t coeff * n1^e1 * ... * nk^ek`.
    MultiPolynomial {
        terms: Vec<MultiTermSpec>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiTermSpec {
    pub coeff: i64,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// Seminorm degree / dual level.
    #[serde(default)]
    pub s: Option<u32>,
    #[serde(default)]
    pub d: Option<u32>,
    /// Sample count for finite averages and statistics.
    #[serde(default)]
    pub n: Option<u64>,
    /// Truncation width for truncated seminorms (h) and duals (m).
    #[serde(default)]
    pub h: Option<usize>,
    #[serde(default)]
    pub m: Option<usize>,
    /// Evaluation mode: `cyclic-exact`, `symbolic`, or `truncated`.
    #[serde(default)]
    pub mode: Option<String>,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Worker count override (else GHK_THREADS, else all cores).
    #[serde(default)]
    pub threads: Option<usize>,
    #[serde(default)]
    pub trials: Option<usize>,
    #[serde(default)]
    pub bins: Option<usize>,
    /// Statistic for `equidist`: `distribution`, `weyl_sum`,
    /// `divisibility`, or `bohr`.
    #[serde(default)]
    pub statistic: Option<String>,
    /// Transform power for `equidist` distribution probes (1 = linear).
    #[serde(default)]
    pub power: Option<u32>,
    /// Multiplier `t` for phase transforms: rational or real literal.
    #[serde(default)]
    pub t: Option<String>,
    #[serde(default)]
    pub r: Option<u64>,
    #[serde(default)]
    pub epsilon: Option<f64>,
    #[serde(default)]
    pub alphas: Option<Vec<String>>,
    #[serde(default)]
    pub ks: Option<Vec<i64>>,
    #[serde(default)]
    pub set: Option<Vec<usize>>,
    /// Scenario name for `command = scenario`.
    #[serde(default)]
    pub scenario: Option<String>,
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default)]
    pub coefficients: Option<Vec<String>>,
    #[serde(default)]
    pub alpha: Option<String>,
    #[serde(default)]
    pub scan_bound: Option<u64>,
    #[serde(default)]
    pub average_count: Option<u64>,
    #[serde(default)]
    pub widths: Option<Vec<usize>>,
    #[serde(default)]
    pub function: Option<String>,
    /// Truncation list for `command = table`.
    #[serde(default)]
    pub counts: Option<Vec<u64>>,
    /// Quantity tabulated by `command = table`: `average_norm` or
    /// `seminorm_power`.
    #[serde(default)]
    pub quantity: Option<String>,
    /// Complex weight table for weighted averages.
    #[serde(default)]
    pub weights: Option<Vec<[f64; 2]>>,
    /// Path to an expected-values table overriding the built-in one.
    #[serde(default)]
    pub expected_values: Option<String>,
    /// Følner box for box-form averages.
    #[serde(default)]
    pub folner: Option<FolnerSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FolnerSpec {
    pub corner: Vec<i64>,
    pub sides: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: String,
    #[serde(default = "default_format")]
    pub format: String,
}

fn default_format() -> String {
    "json".to_string()
}

impl RunConfig {
    /// Parse, apply `--set` overrides (dotted paths into the JSON tree), and
    /// validate.
    pub fn from_json(
        raw: &str,
        overrides: &[(String, String)],
        seed: Option<&u64>,
    ) -> Result<Self> {
        let mut value: serde_json::Value = serde_json::from_str(raw)
            .map_err(|e| Error::Precondition(format!("JSON parse error: {e}")))?;
        for (key, val) in overrides {
            apply_override(&mut value, key, val)?;
        }
        if let Some(seed) = seed {
            apply_override(&mut value, "params.seed", &seed.to_string())?;
        }
        let cfg: RunConfig = serde_json::from_value(value)
            .map_err(|e| Error::Precondition(format!("schema error: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        if let Some(s) = self.params.s {
            if s > 6 {
                return Err(Error::Precondition("degree s capped at 6".into()));
            }
        }
        if let Some(d) = self.params.d {
            if d > 6 {
                return Err(Error::Precondition("degree d capped at 6".into()));
            }
        }
        if matches!(self.command, CommandKind::Scenario) && self.params.scenario.is_none() {
            return Err(Error::Precondition(
                "command `scenario` needs params.scenario".into(),
            ));
        }
        Ok(())
    }

    /// Instantiation for the declared symbols, with overrides applied.
    pub fn instantiation(&self) -> Result<Instantiation> {
        let mut inst = if self.symbols.is_empty() {
            Instantiation::standard()
        } else {
            Instantiation::standard_for(&self.symbols)
        };
        for (name, literal) in &self.instantiate {
            inst.set(name, FixedReal::parse(literal)?.to_f64());
        }
        Ok(inst)
    }

    pub fn symbol_names(&self) -> Vec<&str> {
        if self.symbols.is_empty() {
            vec!["alpha", "beta", "gamma", "delta"]
        } else {
            self.symbols.iter().map(|s| s.as_str()).collect()
        }
    }
}

fn apply_override(value: &mut serde_json::Value, key: &str, raw: &str) -> Result<()> {
    let parsed: serde_json::Value = serde_json::from_str(raw)
        .unwrap_or_else(|_| serde_json::Value::String(raw.to_string()));
    let mut cursor = value;
    let parts: Vec<&str> = key.split('.').collect();
    for (i, part) in parts.iter().enumerate() {
        if !cursor.is_object() {
            return Err(Error::Precondition(format!(
                "--set path `{key}` walks through a non-object"
            )));
        }
        let map = cursor.as_object_mut().unwrap();
        if i == parts.len() - 1 {
            map.insert(part.to_string(), parsed);
            return Ok(());
        }
        cursor = map
            .entry(part.to_string())
            .or_insert_with(|| serde_json::Value::Object(Default::default()));
    }
    Ok(())
}

/// Instantiated system, one of the two backends.
pub enum BuiltSystem {
    Cyclic(CyclicSystem),
    Product(CyclicProduct),
    Affine(AffineSystem),
}

pub fn build_system(cfg: &RunConfig) -> Result<BuiltSystem> {
    let spec = cfg
        .system
        .as_ref()
        .ok_or_else(|| Error::Precondition("this command needs a system".into()))?;
    Ok(match spec {
        SystemSpec::Cyclic { modulus, step } => {
            BuiltSystem::Cyclic(CyclicSystem::new(*modulus, *step)?)
        }
        SystemSpec::CyclicProduct { factors } => {
            let fs = factors
                .iter()
                .map(|f| CyclicSystem::new(f.modulus, f.step))
                .collect::<Result<Vec<_>>>()?;
            BuiltSystem::Product(CyclicProduct::new(fs)?)
        }
        SystemSpec::Affine {
            matrix,
            translation,
        } => {
            let symbols = cfg.symbol_names();
            let b = translation
                .iter()
                .map(|t| FormalScalar::parse(t, &symbols))
                .collect::<Result<Vec<_>>>()?;
            BuiltSystem::Affine(AffineSystem::new(matrix.clone(), b)?)
        }
        SystemSpec::SkewProduct => BuiltSystem::Affine(AffineSystem::skew_product("alpha")),
    })
}

pub fn build_finite_function(
    spec: &FunctionSpec,
    size: usize,
    cyclic: Option<&CyclicSystem>,
) -> Result<CyclicFunction> {
    Ok(match spec {
        FunctionSpec::One => CyclicFunction::new(vec![Complex64::ONE; size]),
        FunctionSpec::Values { values } => {
            if values.len() != size {
                return Err(Error::DimensionMismatch(format!(
                    "{} values for a system of size {size}",
                    values.len()
                )));
            }
            CyclicFunction::new(values.iter().map(|[re, im]| Complex64::new(*re, *im)).collect())
        }
        FunctionSpec::Indicator { set } => {
            let mut v = vec![Complex64::ZERO; size];
            for &x in set {
                if x >= size {
                    return Err(Error::Precondition(format!(
                        "indicator index {x} out of range"
                    )));
                }
                v[x] = Complex64::ONE;
            }
            CyclicFunction::new(v)
        }
        FunctionSpec::CyclicCharacter { xi } => {
            let sys = cyclic.ok_or_else(|| {
                Error::UnsupportedRepresentation(
                    "cyclic_character needs a plain cyclic system".into(),
                )
            })?;
            CyclicFunction::character(sys, *xi)
        }
        other => {
            return Err(Error::UnsupportedRepresentation(format!(
                "{other:?} is not a finite-backend function"
            )))
        }
    })
}

pub fn build_trig_function(spec: &FunctionSpec, dim: usize) -> Result<TrigPolynomial> {
    Ok(match spec {
        FunctionSpec::One => TrigPolynomial::one(dim),
        FunctionSpec::Character { frequency } => {
            if frequency.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "frequency length {} vs dimension {dim}",
                    frequency.len()
                )));
            }
            TrigPolynomial::character(dim, frequency)
        }
        FunctionSpec::Trig { terms } => {
            let mut f = TrigPolynomial::zero(dim);
            for t in terms {
                if t.frequency.len() != dim {
                    return Err(Error::DimensionMismatch(format!(
                        "frequency length {} vs dimension {dim}",
                        t.frequency.len()
                    )));
                }
                let amp = match &t.amplitude {
                    AmplitudeSpec::Literal(s) => ExactComplex::from_rat(parse_rat(s)?),
                    AmplitudeSpec::Complex { re, im } => {
                        ExactComplex::from_re_im(parse_rat(re)?, parse_rat(im)?)
                    }
                };
                f.insert(t.frequency.clone(), amp);
            }
            f
        }
        other => {
            return Err(Error::UnsupportedRepresentation(format!(
                "{other:?} is not an affine-backend function"
            )))
        }
    })
}

pub fn build_sequence(spec: &SequenceSpec) -> Result<IntegerSequence> {
    Ok(match spec {
        SequenceSpec::Polynomial { coeffs } => IntegerSequence::polynomial(coeffs),
        SequenceSpec::FloorPower { num, den } => IntegerSequence::FloorPower {
            num: *num,
            den: *den,
        },
        SequenceSpec::Indicator {
            base,
            gate_poly,
            alpha,
            interval,
        } => IntegerSequence::Indicator {
            base: Box::new(build_sequence(base)?),
            gate_poly: gate_poly.clone(),
            alpha: FixedReal::parse(alpha)?,
            lo: parse_rat(&interval[0])?,
            hi: parse_rat(&interval[1])?,
        },
        SequenceSpec::Enumeration {
            power,
            alpha,
            interval,
            count,
            scan_bound,
        } => IntegerSequence::Enumeration(EnumerationSeq::new(
            *power,
            FixedReal::parse(alpha)?,
            parse_rat(&interval[0])?,
            parse_rat(&interval[1])?,
            *count,
            scan_bound.unwrap_or(ghk_core::ENUMERATION_SCAN_BOUND),
        )?),
        SequenceSpec::Table { values } => IntegerSequence::Table {
            values: values.clone(),
        },
        SequenceSpec::MultiPolynomial { .. } => {
            return Err(Error::UnsupportedRepresentation(
                "multi_polynomial sequences are only usable in Følner-box averages".into(),
            ))
        }
        SequenceSpec::TableFile { path } => {
            let raw = std::fs::read_to_string(path).map_err(|e| {
                Error::Precondition(format!("cannot read table file {path}: {e}"))
            })?;
            let values = raw
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(|l| {
                    l.parse::<i64>().map_err(|e| {
                        Error::Precondition(format!("bad integer `{l}` in {path}: {e}"))
                    })
                })
                .collect::<Result<Vec<i64>>>()?;
            IntegerSequence::Table { values }
        }
    })
}

/// `Rat` re-export for dispatch code.
pub fn rat_from_literal(s: &str) -> Result<Rat> {
    parse_rat(s)
}

/// A box sequence as an integer polynomial over the box variables.
pub fn build_box_polynomial(spec: &SequenceSpec, rank: usize) -> Result<IntPoly> {
    match spec {
        SequenceSpec::MultiPolynomial { terms } => {
            let mut p = IntPoly::zero();
            for t in terms {
                if t.exponents.len() != rank {
                    return Err(Error::DimensionMismatch(format!(
                        "term has {} exponents for a rank-{rank} box",
                        t.exponents.len()
                    )));
                }
                let names: Vec<String> = (1..=rank).map(|j| format!("n{j}")).collect();
                let vars: Vec<(&str, u32)> = names
                    .iter()
                    .map(|s| s.as_str())
                    .zip(t.exponents.iter().copied())
                    .collect();
                let mono = IntPoly::monomial(Rat::from_integer(t.coeff.into()), &vars);
                p = p.add(&mono);
            }
            Ok(p)
        }
        SequenceSpec::Polynomial { coeffs } if rank == 1 => {
            Ok(IntPoly::univariate("n1", coeffs))
        }
        other => Err(Error::UnsupportedRepresentation(format!(
            "{other:?} cannot feed a rank-{rank} box average"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_overrides() {
        let raw = r#"{
            "command": "seminorm",
            "system": {"kind": "cyclic", "modulus": 16, "step": 1},
            "functions": [{"kind": "one"}],
            "params": {"s": 2, "mode": "cyclic-exact"}
        }"#;
        let cfg = RunConfig::from_json(raw, &[], None).unwrap();
        assert_eq!(cfg.params.s, Some(2));
        let cfg = RunConfig::from_json(
            raw,
            &[("params.s".into(), "3".into())],
            Some(&9),
        )
        .unwrap();
        assert_eq!(cfg.params.s, Some(3));
        assert_eq!(cfg.params.seed, Some(9));
    }

    #[test]
    fn unknown_keys_rejected() {
        let raw = r#"{"command": "seminorm", "bogus": 1}"#;
        assert!(RunConfig::from_json(raw, &[], None).is_err());
        let raw = r#"{"command": "seminorm", "params": {"zzz": 1}}"#;
        assert!(RunConfig::from_json(raw, &[], None).is_err());
    }

    #[test]
    fn degree_bound_rejected() {
        let raw = r#"{"command": "seminorm", "params": {"s": 9}}"#;
        assert!(RunConfig::from_json(raw, &[], None).is_err());
    }
}
