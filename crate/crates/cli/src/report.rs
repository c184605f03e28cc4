//! Machine-readable pipeline reports.

use std::collections::BTreeMap;

use liewedge_core::{Mat, Rat, SpanCertificate};
use serde::Serialize;
use serde_json::Value;

/// Version tag written into every report.
pub const SCHEMA: &str = "liewedge.report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateRecord {
    pub side: i8,
    pub subspace: Vec<Vec<String>>,
    pub witness: Vec<String>,
    pub epsilons: Vec<String>,
    pub halvings: Vec<u32>,
    pub points: Vec<Vec<String>>,
}

impl CertificateRecord {
    pub fn new(side: i8, c: &SpanCertificate) -> Self {
        CertificateRecord {
            side,
            subspace: c.subspace.iter().map(|v| texts(v)).collect(),
            witness: texts(&c.witness),
            epsilons: texts(&c.epsilons),
            halvings: c.halvings(),
            points: c.points.iter().map(|v| texts(v)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub pipeline: String,
    pub input: String,
    pub summary: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub certificates: Vec<CertificateRecord>,
    /// Wall-clock time; excluded from determinism comparisons.
    pub timing_ms: u64,
}

impl Report {
    pub fn new(pipeline: &str, input: &str) -> Self {
        Report {
            schema: SCHEMA,
            pipeline: pipeline.to_string(),
            input: input.to_string(),
            summary: BTreeMap::new(),
            checks: Vec::new(),
            certificates: Vec::new(),
            timing_ms: 0,
        }
    }

    pub fn check(&mut self, id: impl Into<String>, verdict: Verdict, detail: impl Into<String>) {
        self.checks.push(Check { id: id.into(), verdict, detail: detail.into() });
    }

    pub fn check_bool(&mut self, id: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.check(id, Verdict::from_bool(ok), detail);
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.to_string(), value.into());
    }

    /// True when every check passed.
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.verdict == Verdict::Pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn text(r: &Rat) -> String {
    r.to_string()
}

pub fn texts(v: &[Rat]) -> Vec<String> {
    v.iter().map(text).collect()
}

pub fn vectors(vs: &[Vec<Rat>]) -> Value {
    Value::from(vs.iter().map(|v| texts(v)).collect::<Vec<_>>())
}

pub fn matrix(m: &Mat) -> Value {
    vectors(&m.row_vecs())
}

/// A serialized report with `timing_ms` removed, for comparisons.
pub fn strip_timing(json: &str) -> Result<String, serde_json::Error> {
    let mut v: Value = serde_json::from_str(json)?;
    if let Some(obj) = v.as_object_mut() {
        obj.remove("timing_ms");
    }
    serde_json::to_string_pretty(&v)
}
