//! Assertion verdicts, reports, and their text and JSON renderings.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Map, Value as Json};
use towercoh::cohomology::{CohomologyTable, Engine};
use towercoh::schur::IrrepSum;
use towercoh::{Error, Result};

/// A computed or expected quantity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Table(CohomologyTable),
    Sum(IrrepSum),
    Int(i128),
    Bool(bool),
    Text(String),
    /// Two tables compared by graded duality.
    Pair(Box<Value>, Box<Value>),
}

impl Value {
    pub fn to_json(&self) -> Json {
        match self {
            Value::Table(t) => {
                let mut groups = Map::new();
                for (d, s) in t.groups() {
                    groups.insert(d.to_string(), sum_json(s));
                }
                json!({ "dim": t.dim(), "groups": groups })
            }
            Value::Sum(s) => sum_json(s),
            Value::Int(n) => int_json(*n),
            Value::Bool(b) => json!(b),
            Value::Text(s) => json!(s),
            Value::Pair(a, b) => json!([a.to_json(), b.to_json()]),
        }
    }
}

fn int_json(n: i128) -> Json {
    i64::try_from(n).map(Json::from).unwrap_or_else(|_| Json::from(n.to_string()))
}

/// `[[weight, multiplicity], …]` in lexicographic weight order.
pub fn sum_json(s: &IrrepSum) -> Json {
    Json::Array(s.terms().map(|(w, m)| json!([w.entries(), int_json(*m)])).collect())
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Table(t) => write!(f, "{t}"),
            Value::Sum(s) => write!(f, "{s}"),
            Value::Int(n) => write!(f, "{n}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Text(s) => write!(f, "{s}"),
            Value::Pair(a, b) => write!(f, "{a} | {b}"),
        }
    }
}

/// Outcome of a successful computation.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub pass: bool,
    pub expected: Value,
    pub got: Value,
}

impl Verdict {
    /// Passes when the two values are equal.
    pub fn equal(expected: Value, got: Value) -> Verdict {
        Verdict { pass: expected == got, expected, got }
    }
}

/// What an assertion checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// A published cohomological claim.
    Claim,
    /// A classical or definitional identity.
    Identity,
    /// Agreement of two independent computations.
    CrossCheck,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Claim => "claim",
            Kind::Identity => "identity",
            Kind::CrossCheck => "cross-check",
        }
    }
}

pub type Check = Box<dyn Fn(&Engine) -> Result<Verdict> + Send + Sync>;

pub struct Assertion {
    pub id: String,
    /// The statement being checked, in words.
    pub anchor: String,
    pub kind: Kind,
    pub check: Check,
}

impl Assertion {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>, kind: Kind, check: impl Fn(&Engine) -> Result<Verdict> + Send + Sync + 'static) -> Self {
        Assertion { id: id.into(), anchor: anchor.into(), kind, check: Box::new(check) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Record {
    pub id: String,
    pub anchor: String,
    pub kind: Kind,
    pub status: Status,
    pub expected: Option<Value>,
    pub got: std::result::Result<Value, Error>,
    pub ms: u128,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub scenario: String,
    pub records: Vec<Record>,
}

/// Process exit status for a finished run.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

impl Report {
    pub fn passed(&self) -> usize {
        self.records.iter().filter(|r| r.status == Status::Pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }

    /// 0 when everything passes, 3 when any computation hit a resource
    /// limit, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            EXIT_OK
        } else if self.records.iter().any(|r| matches!(r.got, Err(Error::ResourceLimit(_)))) {
            EXIT_RESOURCE
        } else {
            EXIT_FAILED
        }
    }

    /// JSON report; `timing: false` writes `ms` as 0 so that output is
    /// byte-identical across runs.
    pub fn to_json(&self, timing: bool) -> Json {
        let assertions: Vec<Json> = self
            .records
            .iter()
            .map(|r| {
                json!({
                    "id": r.id,
                    "anchor": r.anchor,
                    "kind": r.kind.as_str(),
                    "status": r.status.as_str(),
                    "expected": r.expected.as_ref().map(Value::to_json).unwrap_or(Json::Null),
                    "got": match &r.got {
                        Ok(v) => v.to_json(),
                        Err(e) => json!({ "error": e.to_string() }),
                    },
                    "ms": if timing { r.ms } else { 0 },
                })
            })
            .collect();
        json!({ "scenario": self.scenario, "assertions": assertions })
    }

    /// One line per assertion plus a summary; failures show both sides.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&format!("{:<5} {}\n", r.status.as_str().to_uppercase(), r.id));
            match (&r.status, &r.got) {
                (Status::Pass, _) => {}
                (_, Ok(got)) => {
                    out.push_str(&format!("      claim:    {}\n", r.anchor));
                    if let Some(e) = &r.expected {
                        out.push_str(&format!("      expected: {e}\n"));
                    }
                    out.push_str(&format!("      got:      {got}\n"));
                }
                (_, Err(e)) => {
                    out.push_str(&format!("      claim:    {}\n", r.anchor));
                    out.push_str(&format!("      error:    {e}\n"));
                }
            }
        }
        out.push_str(&format!("{}: {}/{} passed\n", self.scenario, self.passed(), self.records.len()));
        out
    }
}

/// Runs assertions on the current rayon pool, keeping the input order.
pub fn run_assertions(scenario: &str, assertions: &[Assertion], engine: &Engine) -> Report {
    let records = assertions
        .par_iter()
        .map(|a| {
            let start = Instant::now();
            let outcome = (a.check)(engine);
            let ms = start.elapsed().as_millis();
            let (status, expected, got) = match outcome {
                Ok(v) => (if v.pass { Status::Pass } else { Status::Fail }, Some(v.expected), Ok(v.got)),
                Err(e) => (Status::Error, None, Err(e)),
            };
            Record { id: a.id.clone(), anchor: a.anchor.clone(), kind: a.kind, status, expected, got, ms }
        })
        .collect();
    Report { scenario: scenario.to_string(), records }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assertions() -> Vec<Assertion> {
        vec![
            Assertion::new("ok", "one equals one", Kind::Identity, |_| Ok(Verdict::equal(Value::Int(1), Value::Int(1)))),
            Assertion::new("bad", "one equals two", Kind::Claim, |_| Ok(Verdict::equal(Value::Int(1), Value::Int(2)))),
            Assertion::new("limit", "too big", Kind::CrossCheck, |_| Err(Error::ResourceLimit("test".into()))),
        ]
    }

    #[test]
    fn exit_codes_rank_resource_limits_above_failures() {
        let eng = Engine::default();
        let all = assertions();
        assert_eq!(run_assertions("s", &all[..1], &eng).exit_code(), EXIT_OK);
        assert_eq!(run_assertions("s", &all[..2], &eng).exit_code(), EXIT_FAILED);
        assert_eq!(run_assertions("s", &all, &eng).exit_code(), EXIT_RESOURCE);
    }

    #[test]
    fn records_keep_input_order_and_status() {
        let r = run_assertions("s", &assertions(), &Engine::default());
        let got: Vec<(&str, Status)> = r.records.iter().map(|x| (x.id.as_str(), x.status)).collect();
        assert_eq!(got, [("ok", Status::Pass), ("bad", Status::Fail), ("limit", Status::Error)]);
        assert_eq!(r.passed(), 1);
        assert!(r.to_text().ends_with("s: 1/3 passed\n"));
    }

    #[test]
    fn json_shape_and_timing_switch() {
        let r = run_assertions("s", &assertions(), &Engine::default());
        let j = r.to_json(false);
        assert_eq!(j["scenario"], "s");
        assert_eq!(j["assertions"][1]["status"], "fail");
        assert_eq!(j["assertions"][1]["kind"], "claim");
        assert_eq!(j["assertions"][1]["expected"], 1);
        assert_eq!(j["assertions"][2]["expected"], Json::Null);
        assert!(j["assertions"][2]["got"]["error"].as_str().unwrap().contains("resource limit"));
        assert!(j["assertions"].as_array().unwrap().iter().all(|a| a["ms"] == 0));
    }

    #[test]
    fn large_integers_serialize_as_strings() {
        assert_eq!(Value::Int(i128::MAX).to_json(), json!(i128::MAX.to_string()));
        assert_eq!(Value::Int(-3).to_json(), json!(-3));
    }
}
