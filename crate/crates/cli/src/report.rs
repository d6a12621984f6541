//! Check results and report serialization (JSON and CSV).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use crate::config::{OutputFormat, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    LowerBoundOnly,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "PASS",
            Self::Fail => "FAIL",
            Self::LowerBoundOnly => "LOWER_BOUND_ONLY",
        })
    }
}

/// How `computed` is compared with `expected`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// `|computed − expected| ≤ tolerance`.
    Eq,
    /// `computed ≤ expected + tolerance`.
    Le,
    /// `computed ≥ expected − tolerance`.
    Ge,
    /// `computed > expected`.
    Gt,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Eq => "eq",
            Self::Le => "le",
            Self::Ge => "ge",
            Self::Gt => "gt",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub params: BTreeMap<String, Value>,
    pub computed: f64,
    pub expected: Option<f64>,
    pub relation: Relation,
    pub tolerance: f64,
    pub status: Status,
    pub witness_ref: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    pub fn compare(id: impl Into<String>, computed: f64, relation: Relation, expected: f64, tolerance: f64) -> Self {
        let pass = match relation {
            Relation::Eq => (computed - expected).abs() <= tolerance,
            Relation::Le => computed <= expected + tolerance,
            Relation::Ge => computed >= expected - tolerance,
            Relation::Gt => computed > expected,
        };
        Self {
            id: id.into(),
            params: BTreeMap::new(),
            computed,
            expected: Some(expected),
            relation,
            tolerance,
            status: if pass { Status::Pass } else { Status::Fail },
            witness_ref: None,
            note: None,
        }
    }

    pub fn eq(id: impl Into<String>, computed: f64, expected: f64, tolerance: f64) -> Self {
        Self::compare(id, computed, Relation::Eq, expected, tolerance)
    }

    /// A value reported as a certified lower bound without an expectation.
    pub fn lower_bound(id: impl Into<String>, computed: f64) -> Self {
        Self {
            id: id.into(),
            params: BTreeMap::new(),
            computed,
            expected: None,
            relation: Relation::Ge,
            tolerance: 0.0,
            status: Status::LowerBoundOnly,
            witness_ref: None,
            note: None,
        }
    }

    /// A check that could not be evaluated.
    pub fn error(id: impl Into<String>, expected: f64, tolerance: f64, message: impl fmt::Display) -> Self {
        let mut r = Self::eq(id, f64::NAN, expected, tolerance);
        r.status = Status::Fail;
        r.note = Some(message.to_string());
        r
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub results: Vec<CheckResult>,
    pub versions: BTreeMap<String, String>,
}

impl Report {
    /// Sorts results by id so the output does not depend on evaluation order.
    pub fn new(config: RunConfig, mut results: Vec<CheckResult>) -> Self {
        results.sort_by(|a, b| a.id.cmp(&b.id));
        let mut versions = BTreeMap::new();
        versions.insert("spinorlab".to_string(), env!("CARGO_PKG_VERSION").to_string());
        versions.insert("report_schema".to_string(), "1".to_string());
        Self {
            config,
            results,
            versions,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.results.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.passed())
    }

    pub fn render(&self, format: OutputFormat) -> Result<Vec<u8>, String> {
        match format {
            OutputFormat::Json => {
                let mut out = serde_json::to_vec_pretty(self).map_err(|e| e.to_string())?;
                out.push(b'\n');
                Ok(out)
            }
            OutputFormat::Csv => self.render_csv(),
        }
    }

    fn render_csv(&self) -> Result<Vec<u8>, String> {
        let keys: BTreeSet<&str> = self
            .results
            .iter()
            .flat_map(|r| r.params.keys().map(String::as_str))
            .collect();
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let mut header = vec![
            "id",
            "status",
            "computed",
            "expected",
            "relation",
            "tolerance",
            "witness_ref",
            "note",
        ]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>();
        header.extend(keys.iter().map(|k| format!("param.{k}")));
        w.write_record(&header).map_err(|e| e.to_string())?;
        for r in &self.results {
            let mut row = vec![
                r.id.clone(),
                r.status.to_string(),
                fmt_f64(r.computed),
                r.expected.map(fmt_f64).unwrap_or_default(),
                r.relation.to_string(),
                fmt_f64(r.tolerance),
                r.witness_ref.clone().unwrap_or_default(),
                r.note.clone().unwrap_or_default(),
            ];
            for k in &keys {
                row.push(match r.params.get(*k) {
                    None => String::new(),
                    Some(Value::String(s)) => s.clone(),
                    Some(v) => v.to_string(),
                });
            }
            w.write_record(&row).map_err(|e| e.to_string())?;
        }
        w.into_inner().map_err(|e| e.to_string())
    }

    /// Writes to the configured path, or to stdout.
    pub fn emit(&self) -> Result<(), String> {
        let bytes = self.render(self.config.output_format)?;
        match &self.config.output_path {
            Some(path) => std::fs::write(path, bytes).map_err(|e| format!("cannot write {}: {e}", path.display())),
            None => std::io::stdout()
                .write_all(&bytes)
                .map_err(|e| format!("cannot write report: {e}")),
        }
    }
}

fn fmt_f64(x: f64) -> String {
    // `{:?}` prints the shortest representation that round-trips.
    format!("{x:?}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses() {
        assert_eq!(CheckResult::eq("a", 1.0, 1.0 + 1e-12, 1e-10).status, Status::Pass);
        assert_eq!(CheckResult::eq("a", 1.0, 1.1, 1e-10).status, Status::Fail);
        assert_eq!(CheckResult::compare("a", 1.5, Relation::Gt, 1.0, 0.0).status, Status::Pass);
        assert_eq!(CheckResult::compare("a", 1.0, Relation::Gt, 1.0, 0.0).status, Status::Fail);
        assert_eq!(CheckResult::compare("a", 1.0 + 1e-7, Relation::Le, 1.0, 1e-6).status, Status::Pass);
        let e = CheckResult::error("x", 0.0, 1e-10, "boom");
        assert!(!e.passed());
        assert_eq!(e.note.as_deref(), Some("boom"));
    }

    #[test]
    fn report_sorted_and_rendered() {
        let r = Report::new(
            RunConfig::default(),
            vec![
                CheckResult::eq("b", 1.0, 1.0, 0.0).param("n", 2),
                CheckResult::lower_bound("a", 1.25).param("p", "inf"),
            ],
        );
        assert_eq!(r.results[0].id, "a");
        assert!(r.all_passed());
        let json = String::from_utf8(r.render(OutputFormat::Json).unwrap()).unwrap();
        assert!(json.contains("\"LOWER_BOUND_ONLY\""));
        assert!(json.ends_with("}\n"));
        let csv = String::from_utf8(r.render(OutputFormat::Csv).unwrap()).unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "id,status,computed,expected,relation,tolerance,witness_ref,note,param.n,param.p"
        );
        assert_eq!(lines.next().unwrap(), "a,LOWER_BOUND_ONLY,1.25,,ge,0.0,,,,inf");
        assert_eq!(lines.next().unwrap(), "b,PASS,1.0,1.0,eq,0.0,,,2,");
    }
}
