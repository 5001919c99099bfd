//! Row-based reporting shared by the verification suites and the CLI.
//!
//! Every computed fact is carried by a [`ReportRow`]: a subject, an ordered
//! parameter list, a structured result, and a pass/fail/info status.  Rows
//! render either as one tab-separated line or as one JSON object per line,
//! with field order fixed so repeated runs are byte-identical.

use serde_json::{Map, Value};
use std::fmt::Display;

/// Outcome attached to a row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
        }
    }
}

/// One reported fact.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    subject: String,
    parameters: Vec<(String, String)>,
    result: Value,
    status: Status,
}

impl ReportRow {
    pub fn new(subject: impl Into<String>) -> Self {
        ReportRow {
            subject: subject.into(),
            parameters: Vec::new(),
            result: Value::Null,
            status: Status::Info,
        }
    }

    /// Append a parameter; insertion order is the render order.
    pub fn param(mut self, key: impl Into<String>, value: impl Display) -> Self {
        self.parameters.push((key.into(), value.to_string()));
        self
    }

    pub fn result(mut self, value: Value) -> Self {
        self.result = value;
        self
    }

    pub fn pass(mut self) -> Self {
        self.status = Status::Pass;
        self
    }

    pub fn fail(mut self) -> Self {
        self.status = Status::Fail;
        self
    }

    /// Pass or fail depending on a checked condition.
    pub fn check(self, ok: bool) -> Self {
        if ok {
            self.pass()
        } else {
            self.fail()
        }
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn subject(&self) -> &str {
        &self.subject
    }

    pub fn result_value(&self) -> &Value {
        &self.result
    }

    /// `subject <TAB> k=v,k=v <TAB> result <TAB> status`.
    ///
    /// String results are emitted bare; anything else is compact JSON.
    /// None of the fields may contain a tab, so the line splits cleanly.
    pub fn to_tsv(&self) -> String {
        let params = if self.parameters.is_empty() {
            "-".to_string()
        } else {
            self.parameters
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        let result = match &self.result {
            Value::Null => "-".to_string(),
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        format!("{}\t{}\t{}\t{}", self.subject, params, result, self.status.as_str())
    }

    /// The row as a JSON object with fixed key order
    /// (`serde_json` maps are key-sorted, so serialization is stable).
    pub fn to_json(&self) -> Value {
        let mut params = Map::new();
        for (k, v) in &self.parameters {
            params.insert(k.clone(), Value::String(v.clone()));
        }
        let mut obj = Map::new();
        obj.insert("subject".into(), Value::String(self.subject.clone()));
        obj.insert("parameters".into(), Value::Object(params));
        obj.insert("result".into(), self.result.clone());
        obj.insert("status".into(), Value::String(self.status.as_str().into()));
        Value::Object(obj)
    }
}

/// Render rows as a newline-terminated block, TSV or JSON lines.
pub fn render_rows(rows: &[ReportRow], json: bool) -> String {
    let mut out = String::new();
    for row in rows {
        if json {
            out.push_str(&row.to_json().to_string());
        } else {
            out.push_str(&row.to_tsv());
        }
        out.push('\n');
    }
    out
}

/// True when no row failed.
pub fn all_passed(rows: &[ReportRow]) -> bool {
    rows.iter().all(|row| row.status() != Status::Fail)
}
