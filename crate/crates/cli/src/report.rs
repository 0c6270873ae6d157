//! Structured reports, exit codes and the text rendering.

use std::fmt::Write as _;

use logsurf_core::bounds::Quantity;
use logsurf_core::rational::to_f64;
use logsurf_core::{ExactCheck, Hypothesis, HypothesisStatus, NamedVerdict, Rational, RationalInterval, Verdict};
use serde::{Deserialize, Serialize};

/// Process exit statuses, listed from lowest to highest precedence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    HypothesisUnmet,
    Unknown,
    Fails,
    InvalidInput,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Fails => 1,
            Status::InvalidInput => 2,
            Status::HypothesisUnmet => 3,
            Status::Unknown => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Value {
    Exact { value: String },
    Interval { lo: String, hi: String },
    Text { value: String },
}

impl Value {
    pub fn exact(r: &Rational) -> Self {
        Value::Exact { value: r.to_string() }
    }

    pub fn interval(i: &RationalInterval) -> Self {
        if i.is_point() {
            return Self::exact(i.lo());
        }
        Value::Interval { lo: i.lo().to_string(), hi: i.hi().to_string() }
    }

    pub fn text(s: impl Into<String>) -> Self {
        Value::Text { value: s.into() }
    }

    fn render(&self) -> String {
        let approx = |s: &str| logsurf_core::parse_rational(s).map(|r| to_f64(&r)).unwrap_or(f64::NAN);
        match self {
            Value::Exact { value } if value.contains('/') => format!("{value} (~{:.6})", approx(value)),
            Value::Exact { value } | Value::Text { value } => value.clone(),
            Value::Interval { lo, hi } => {
                let (l, h) = (approx(lo), approx(hi));
                format!("[{l:.12}, {h:.12}] (width {:.1e})", h - l)
            }
        }
    }
}

impl From<&Quantity> for Value {
    fn from(q: &Quantity) -> Self {
        match q {
            Quantity::Exact(r) => Value::exact(r),
            Quantity::Interval(i) => Value::interval(i),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub name: String,
    pub value: Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisState {
    Met,
    Unmet,
    Asserted,
}

impl From<HypothesisStatus> for HypothesisState {
    fn from(s: HypothesisStatus) -> Self {
        match s {
            HypothesisStatus::Met => Self::Met,
            HypothesisStatus::Unmet => Self::Unmet,
            HypothesisStatus::Asserted => Self::Asserted,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisEntry {
    pub name: String,
    pub status: HypothesisState,
}

impl From<&Hypothesis> for HypothesisEntry {
    fn from(h: &Hypothesis) -> Self {
        Self { name: h.name.clone(), status: h.status.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    Fails,
    Unknown,
}

impl From<Verdict> for Outcome {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Holds => Self::Holds,
            Verdict::Fails => Self::Fails,
            Verdict::Unknown => Self::Unknown,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictEntry {
    pub name: String,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl From<&NamedVerdict> for VerdictEntry {
    fn from(v: &NamedVerdict) -> Self {
        Self { name: v.name.clone(), outcome: v.verdict.into(), detail: v.note.clone() }
    }
}

impl From<&ExactCheck> for VerdictEntry {
    fn from(c: &ExactCheck) -> Self {
        let name = match c.index {
            Some(i) => format!("{} [i={i}]", c.name),
            None => c.name.clone(),
        };
        Self {
            name,
            outcome: Verdict::from(c.holds()).into(),
            detail: Some(format!("{} {} {}", c.lhs, c.relation, c.rhs)),
        }
    }
}

/// One group of results sharing a hypothesis ledger.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub title: String,
    #[serde(default)]
    pub values: Vec<Entry>,
    #[serde(default)]
    pub hypotheses: Vec<HypothesisEntry>,
    #[serde(default)]
    pub verdicts: Vec<VerdictEntry>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl Section {
    pub fn new(title: impl Into<String>) -> Self {
        Self { title: title.into(), ..Self::default() }
    }

    pub fn value(&mut self, name: impl Into<String>, value: Value) {
        self.values.push(Entry { name: name.into(), value });
    }

    pub fn hypotheses_met(&self) -> bool {
        self.hypotheses.iter().all(|h| h.status != HypothesisState::Unmet)
    }

    /// A failing or unknown verdict only counts when the section's
    /// hypotheses are met; otherwise the section reports them as unmet.
    pub fn status(&self) -> Status {
        if !self.hypotheses_met() {
            return Status::HypothesisUnmet;
        }
        let mut s = Status::Ok;
        for v in &self.verdicts {
            s = s.max(match v.outcome {
                Outcome::Holds => Status::Ok,
                Outcome::Fails => Status::Fails,
                Outcome::Unknown => Status::Unknown,
            });
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scenario: Option<String>,
    pub bits: u32,
    pub status: Status,
    pub exit_code: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default)]
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(command: &str, scenario: Option<String>, bits: u32, sections: Vec<Section>) -> Self {
        let status = sections.iter().map(Section::status).max().unwrap_or(Status::Ok);
        Self { command: command.to_string(), scenario, bits, status, exit_code: status.code(), error: None, sections }
    }

    pub fn failed(command: &str, scenario: Option<String>, bits: u32, status: Status, error: String) -> Self {
        Self {
            command: command.to_string(),
            scenario,
            bits,
            status,
            exit_code: status.code(),
            error: Some(error),
            sections: Vec::new(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let name = self.scenario.as_deref().unwrap_or("-");
        let _ = writeln!(out, "== {} {} (bits {}) -> {:?} [exit {}]", self.command, name, self.bits, self.status, self.exit_code);
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error: {e}");
        }
        for s in &self.sections {
            let _ = writeln!(out, "-- {}", s.title);
            let width = s.values.iter().map(|e| e.name.chars().count()).max().unwrap_or(0);
            for e in &s.values {
                let _ = writeln!(out, "  {:<width$}  {}", e.name, e.value.render());
            }
            for h in &s.hypotheses {
                let _ = writeln!(out, "  hypothesis {:<9} {}", format!("{:?}", h.status).to_lowercase(), h.name);
            }
            for v in &s.verdicts {
                let tag = match v.outcome {
                    Outcome::Holds => "HOLDS",
                    Outcome::Fails => "FAILS",
                    Outcome::Unknown => "UNKNOWN",
                };
                match &v.detail {
                    Some(d) => {
                        let _ = writeln!(out, "  {tag:<7} {}  ({d})", v.name);
                    }
                    None => {
                        let _ = writeln!(out, "  {tag:<7} {}", v.name);
                    }
                }
            }
            for n in &s.notes {
                let _ = writeln!(out, "  note: {n}");
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchReport {
    pub status: Status,
    pub exit_code: i32,
    pub reports: Vec<Report>,
}

impl BatchReport {
    pub fn new(reports: Vec<Report>) -> Self {
        let status = reports.iter().map(|r| r.status).max().unwrap_or(Status::Ok);
        Self { status, exit_code: status.code(), reports }
    }

    pub fn to_text(&self) -> String {
        let mut out: String = self.reports.iter().map(Report::to_text).collect();
        let _ = writeln!(out, "== batch: {} scenarios -> {:?} [exit {}]", self.reports.len(), self.status, self.exit_code);
        out
    }
}
