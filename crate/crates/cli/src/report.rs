//! Reports: results, prediction-vs-oracle rows, and their two renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::config::RunConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "ERROR")]
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        }
    }
}

/// How the observed value must relate to the predicted one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Ge => ">=",
        }
    }

    fn holds(self, observed: usize, predicted: usize) -> bool {
        match self {
            Relation::Eq => observed == predicted,
            Relation::Le => observed <= predicted,
            Relation::Ge => observed >= predicted,
        }
    }
}

/// One comparison; both values and their sources are always kept.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub label: String,
    pub observed: Value,
    pub observed_source: String,
    pub relation: Relation,
    pub predicted: Value,
    pub predicted_source: String,
    pub status: Status,
}

impl Row {
    pub fn compare(
        label: impl Into<String>,
        observed: usize,
        observed_source: &str,
        relation: Relation,
        predicted: usize,
        predicted_source: &str,
    ) -> Self {
        Row {
            label: label.into(),
            observed: observed.into(),
            observed_source: observed_source.into(),
            relation,
            predicted: predicted.into(),
            predicted_source: predicted_source.into(),
            status: if relation.holds(observed, predicted) {
                Status::Pass
            } else {
                Status::Fail
            },
        }
    }

    /// A row whose verdict is decided by the caller.
    pub fn verdict(
        label: impl Into<String>,
        observed: impl Into<Value>,
        observed_source: &str,
        predicted: impl Into<Value>,
        predicted_source: &str,
        pass: bool,
    ) -> Self {
        Row {
            label: label.into(),
            observed: observed.into(),
            observed_source: observed_source.into(),
            relation: Relation::Eq,
            predicted: predicted.into(),
            predicted_source: predicted_source.into(),
            status: if pass { Status::Pass } else { Status::Fail },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(name: impl Into<String>, bytes: &[u8]) -> Self {
        InputDigest {
            name: name.into(),
            sha256: hex(&Sha256::digest(bytes)),
        }
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().fold(String::with_capacity(2 * bytes.len()), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// What a command produces before it is wrapped into a [`Report`].
#[derive(Debug, Default, Clone)]
pub struct Outcome {
    pub inputs: Vec<InputDigest>,
    pub results: BTreeMap<String, Value>,
    /// Titled text blocks for the text format.
    pub sections: Vec<(String, String)>,
    pub rows: Vec<Row>,
    pub notes: Vec<String>,
}

impl Outcome {
    pub fn result(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("serializable result");
        self.results.insert(key.into(), v);
    }

    pub fn section(&mut self, title: &str, body: impl Into<String>) {
        self.sections.push((title.into(), body.into()));
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub config: RunConfig,
    pub inputs: Vec<InputDigest>,
    pub results: BTreeMap<String, Value>,
    pub rows: Vec<Row>,
    pub notes: Vec<String>,
    pub error: Option<String>,
    pub status: Status,
    /// The only field that may differ between identical runs.
    pub timing: Timing,
    #[serde(skip)]
    pub sections: Vec<(String, String)>,
}

impl Report {
    /// On error the results, rows and notes are dropped; input digests are kept.
    pub fn new(command: String, config: RunConfig, mut outcome: Outcome, error: Option<String>, elapsed_ms: f64) -> Self {
        if error.is_some() {
            outcome = Outcome {
                inputs: outcome.inputs,
                ..Outcome::default()
            };
        }
        let status = if error.is_some() {
            Status::Error
        } else if outcome.rows.iter().any(|r| r.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        };
        Report {
            command,
            config,
            inputs: outcome.inputs,
            results: outcome.results,
            rows: outcome.rows,
            notes: outcome.notes,
            error,
            status,
            timing: Timing { elapsed_ms },
            sections: outcome.sections,
        }
    }

    /// Process exit status: 0 on PASS, 1 when a row fails, 2 on error.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    pub fn render_doc(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable report");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let c = &self.config;
        let _ = writeln!(out, "field: {}  kmax: {}  seed: {}", c.field, c.kmax, c.seed);
        for i in &self.inputs {
            let _ = writeln!(out, "input: {}  sha256 {}", i.name, i.sha256);
        }
        for (title, body) in &self.sections {
            let _ = writeln!(out, "\n== {title} ==");
            out.push_str(body);
            if !body.ends_with('\n') {
                out.push('\n');
            }
        }
        if !self.rows.is_empty() {
            out.push_str("\n== comparisons ==\n");
            out.push_str(&rows_table(&self.rows));
        }
        if !self.notes.is_empty() {
            out.push_str("\n== notes ==\n");
            for n in &self.notes {
                let _ = writeln!(out, "- {n}");
            }
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "\nerror: {e}");
        }
        let _ = writeln!(out, "\nstatus: {}  time: {:.1} ms", self.status.as_str(), self.timing.elapsed_ms);
        out
    }

    pub fn render(&self) -> String {
        match self.config.format {
            crate::config::Format::Text => self.render_text(),
            crate::config::Format::Doc => self.render_doc(),
        }
    }
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn rows_table(rows: &[Row]) -> String {
    let cells: Vec<[String; 5]> = rows
        .iter()
        .map(|r| {
            [
                r.label.clone(),
                format!("{} ({})", value_text(&r.observed), r.observed_source),
                r.relation.as_str().to_string(),
                format!("{} ({})", value_text(&r.predicted), r.predicted_source),
                r.status.as_str().to_string(),
            ]
        })
        .collect();
    let mut widths = [0usize; 5];
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "  {}", line.join("  ").trim_end());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Caps, Format};
    use depthlab::{Execution, Field};

    fn config() -> RunConfig {
        RunConfig {
            field: Field::Rationals,
            kmax: 2,
            caps: Caps {
                lattice: 1,
                buchberger: 1,
                delta: 1,
                search: 1,
                poset_ideals: 1,
                bounds: 1,
            },
            format: Format::Doc,
            seed: 1,
            execution: Execution::Sequential,
        }
    }

    #[test]
    fn failing_row_keeps_both_values() {
        let r = Row::compare("depth", 2, "oracle", Relation::Eq, 3, "formula");
        assert_eq!(r.status, Status::Fail);
        assert_eq!((r.observed.clone(), r.predicted.clone()), (Value::from(2), Value::from(3)));
        let mut o = Outcome::default();
        o.rows.push(r);
        let rep = Report::new("depth".into(), config(), o, None, 1.0);
        assert_eq!(rep.exit_code(), 1);
        let text = rep.render_text();
        assert!(text.contains("2 (oracle)") && text.contains("3 (formula)") && text.contains("FAIL"));
    }

    #[test]
    fn relations() {
        assert_eq!(Row::compare("b", 3, "o", Relation::Ge, 2, "p").status, Status::Pass);
        assert_eq!(Row::compare("b", 1, "o", Relation::Ge, 2, "p").status, Status::Fail);
        assert_eq!(Row::compare("b", 1, "o", Relation::Le, 2, "p").status, Status::Pass);
    }

    #[test]
    fn errors_still_produce_a_report() {
        let rep = Report::new("x".into(), config(), Outcome::default(), Some("boom".into()), 0.0);
        assert_eq!(rep.exit_code(), 2);
        assert!(rep.render_doc().contains("\"error\": \"boom\""));
    }

    #[test]
    fn digest_is_sha256() {
        let d = InputDigest::of("empty", b"");
        assert_eq!(d.sha256, "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }
}
