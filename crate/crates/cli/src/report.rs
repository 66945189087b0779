use std::fmt::Write as _;

use nbk_core::check::{Check, Status};
use nbk_core::ktheory::{AbelianGroup, IntMatrix};
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "nbk-report/1";

#[derive(Clone, Debug, Serialize)]
pub struct Config {
    pub seed: u64,
    pub samples: usize,
    pub degree: i64,
    pub cyclotomic_order: u32,
    pub theta: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleJson {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckJson {
    pub name: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleJson>,
}

impl From<&Check> for CheckJson {
    fn from(c: &Check) -> Self {
        CheckJson {
            name: c.name.clone(),
            status: c.status.as_str(),
            detail: c.detail.clone(),
            counterexample: c.counterexample.as_ref().map(|cx| CounterexampleJson {
                input: cx.input.clone(),
                lhs: cx.lhs.clone(),
                rhs: cx.rhs.clone(),
            }),
        }
    }
}

/// Markdown blocks that mirror the tables they summarise.
#[derive(Clone, Debug)]
pub enum Table {
    Rows { title: String, header: Vec<String>, rows: Vec<Vec<String>> },
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub command: String,
    pub config: Config,
    pub results: Vec<CheckJson>,
    pub payload: Value,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new(command: impl Into<String>, config: Config) -> Self {
        Report {
            schema: SCHEMA,
            tool_version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            config,
            results: Vec::new(),
            payload: Value::Null,
            notes: Vec::new(),
            checks: Vec::new(),
            tables: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.results.push(CheckJson::from(&check));
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.push(c);
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        let text = text.into();
        if !self.notes.contains(&text) {
            self.notes.push(text);
        }
    }

    /// Failures, plus anomalies under `strict`.
    pub fn failed(&self, strict: bool) -> bool {
        self.checks
            .iter()
            .any(|c| c.status == Status::Fail || (strict && c.status == Status::Anomaly))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# nbk {}\n", self.command);
        let c = &self.config;
        let _ = writeln!(
            out,
            "version {} | seed {} | samples {} | degree {} | cyclotomic order {} | theta {}\n",
            self.tool_version, c.seed, c.samples, c.degree, c.cyclotomic_order, c.theta
        );
        for t in &self.tables {
            match t {
                Table::Rows { title, header, rows } => {
                    let _ = writeln!(out, "## {title}\n");
                    let _ = writeln!(out, "| {} |", header.join(" | "));
                    let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
                    for r in rows {
                        let _ = writeln!(out, "| {} |", r.join(" | "));
                    }
                    out.push('\n');
                }
            }
        }
        if !self.checks.is_empty() {
            let _ = writeln!(out, "## Checks\n");
            let _ = writeln!(out, "| status | check | detail |");
            let _ = writeln!(out, "|---|---|---|");
            for c in &self.checks {
                let mut detail = c.detail.clone().unwrap_or_default();
                if let Some(cx) = &c.counterexample {
                    if !detail.is_empty() {
                        detail.push_str("; ");
                    }
                    detail.push_str(&cx.to_string());
                }
                let _ = writeln!(out, "| {} | {} | {} |", c.status, cell(&c.name), cell(&detail));
            }
            out.push('\n');
        }
        if !self.notes.is_empty() {
            let _ = writeln!(out, "## Notes\n");
            for n in &self.notes {
                let _ = writeln!(out, "- {n}");
            }
        }
        out
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

pub fn small(v: &num_bigint::BigInt) -> Value {
    match i64::try_from(v) {
        Ok(n) => Value::from(n),
        Err(_) => Value::from(v.to_string()),
    }
}

pub fn group_json(g: &AbelianGroup) -> Value {
    serde_json::json!({
        "rank": g.free_rank,
        "torsion": g.torsion.iter().map(small).collect::<Vec<_>>(),
    })
}

pub fn matrix_json(m: &IntMatrix) -> Value {
    Value::from((0..m.rows()).map(|i| Value::from(m.row(i).iter().map(small).collect::<Vec<_>>())).collect::<Vec<_>>())
}

pub fn matrix_rows(m: &IntMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect()
}
