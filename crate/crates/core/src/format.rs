//! JSON scenario files.
//!
//! Rationals are written as plain integers or `[numerator, denominator]`
//! pairs. On input a decimal number (`0.5`) or a string (`"1/3"`, `"0.25"`)
//! is also accepted and converted exactly.

use std::path::Path;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::model::{Gender, Policy, Rational, Rule, Scenario, Worker, WorkerId};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: line {line}, column {column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
}

/// Exact rational with the file-format encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FileRational(pub Rational);

impl Serialize for FileRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            s.serialize_i64(*self.0.numer())
        } else {
            [*self.0.numer(), *self.0.denom()].serialize(s)
        }
    }
}

impl<'de> Deserialize<'de> for FileRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        rational_from_value(&v).map(FileRational).map_err(D::Error::custom)
    }
}

fn rational_from_value(v: &Value) -> Result<Rational, String> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i))
            } else if let Some(f) = n.as_f64() {
                // Shortest round-trip decimal form, so 0.3 reads as 3/10.
                parse_rational(&format!("{f}"))
            } else {
                Err(format!("number {n} out of range"))
            }
        }
        Value::String(s) => parse_rational(s),
        Value::Array(pair) if pair.len() == 2 => {
            let num = pair[0].as_i64().ok_or("numerator must be an integer")?;
            let den = pair[1].as_i64().ok_or("denominator must be an integer")?;
            if den == 0 {
                return Err("zero denominator".into());
            }
            Ok(Rational::new(num, den))
        }
        other => Err(format!("expected a rational, found {other}")),
    }
}

/// Parses `"a/b"`, `"-12"` or a plain decimal like `"0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let bad = || format!("invalid rational `{s}`");
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || frac.len() > 17 {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let num: i64 = digits.parse().map_err(|_| bad())?;
    let den = 10i64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
    let r = Rational::new(num, den);
    Ok(if neg { -r } else { r })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum PoolTag {
    Open,
    Disability,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WorkerRecord {
    id: WorkerId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    score: Option<FileRational>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    minority: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gender: Option<Gender>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    open_score: Option<FileRational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    disability_score: Option<FileRational>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pools: Vec<PoolTag>,
}

impl From<&Worker> for WorkerRecord {
    fn from(w: &Worker) -> Self {
        let mut pools = Vec::new();
        if w.in_open_pool {
            pools.push(PoolTag::Open);
        }
        if w.in_disability_pool {
            pools.push(PoolTag::Disability);
        }
        Self {
            id: w.id.clone(),
            score: w.score.map(FileRational),
            minority: w.minority,
            gender: w.gender,
            open_score: w.open_score.map(FileRational),
            disability_score: w.disability_score.map(FileRational),
            pools,
        }
    }
}

impl From<WorkerRecord> for Worker {
    fn from(r: WorkerRecord) -> Self {
        Self {
            id: r.id,
            score: r.score.map(|s| s.0),
            minority: r.minority,
            gender: r.gender,
            open_score: r.open_score.map(|s| s.0),
            disability_score: r.disability_score.map(|s| s.0),
            in_open_pool: r.pools.contains(&PoolTag::Open),
            in_disability_pool: r.pools.contains(&PoolTag::Disability),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct PolicyRecord {
    rule: Rule,
    m: FileRational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
}

impl From<&Policy> for PolicyRecord {
    fn from(p: &Policy) -> Self {
        Self {
            rule: p.rule,
            m: FileRational(p.m),
            k: p.k,
        }
    }
}

impl From<PolicyRecord> for Policy {
    fn from(r: PolicyRecord) -> Self {
        Self {
            rule: r.rule,
            m: r.m.0,
            k: r.k,
        }
    }
}

/// On-disk form of a scenario; plural scenarios reuse it with extra fields.
#[derive(Debug, Serialize, Deserialize)]
pub(crate) struct ScenarioRecord {
    workers: Vec<WorkerRecord>,
    policy: PolicyRecord,
    #[serde(default)]
    sequence: Vec<usize>,
    #[serde(default)]
    prior_hires: Vec<WorkerId>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    subpools: Vec<Vec<WorkerId>>,
}

impl From<&Scenario> for ScenarioRecord {
    fn from(s: &Scenario) -> Self {
        Self {
            workers: s.workers.iter().map(WorkerRecord::from).collect(),
            policy: PolicyRecord::from(&s.policy),
            sequence: s.sequence.clone(),
            prior_hires: s.prior_hires.clone(),
            subpools: s.subpools.clone(),
        }
    }
}

impl From<ScenarioRecord> for Scenario {
    fn from(r: ScenarioRecord) -> Self {
        Self {
            workers: r.workers.into_iter().map(Worker::from).collect(),
            policy: r.policy.into(),
            sequence: r.sequence,
            prior_hires: r.prior_hires,
            subpools: r.subpools,
        }
    }
}

impl Serialize for Scenario {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ScenarioRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scenario {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        ScenarioRecord::deserialize(d).map(Scenario::from)
    }
}

impl Serialize for Policy {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolicyRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Policy {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        PolicyRecord::deserialize(d).map(Policy::from)
    }
}

impl Serialize for Worker {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WorkerRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Worker {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        WorkerRecord::deserialize(d).map(Worker::from)
    }
}

pub fn parse_scenario(text: &str) -> Result<Scenario, serde_json::Error> {
    serde_json::from_str(text)
}

/// Pretty JSON with a trailing newline.
pub fn emit_scenario(scenario: &Scenario) -> String {
    let mut out = serde_json::to_string_pretty(scenario).expect("scenario serializes");
    out.push('\n');
    out
}

/// Hex SHA-256 over the compact canonical JSON of the scenario.
pub fn scenario_digest(scenario: &Scenario) -> String {
    json_digest(scenario)
}

/// Hex SHA-256 over the compact JSON of any serializable value.
pub fn json_digest<T: Serialize + ?Sized>(value: &T) -> String {
    let compact = serde_json::to_vec(value).expect("value serializes");
    hex::encode(Sha256::digest(compact))
}

pub(crate) fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| FormatError::Parse {
        path: path.display().to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn load_scenario(path: &Path) -> Result<Scenario, FormatError> {
    read_json(path)
}
