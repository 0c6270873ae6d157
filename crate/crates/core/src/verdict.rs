//! Three-valued verdicts and hypothesis statuses shared by the evaluators.

use std::fmt;

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Holds,
    Fails,
    /// An interval straddled the comparison point at every precision tried.
    Unknown,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b { Verdict::Holds } else { Verdict::Fails }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HypothesisStatus {
    Met,
    Unmet,
    /// Taken on trust from the input; not checkable here.
    Asserted,
}

impl HypothesisStatus {
    pub fn checked(b: bool) -> Self {
        if b { Self::Met } else { Self::Unmet }
    }

    pub fn asserted(b: bool) -> Self {
        if b { Self::Asserted } else { Self::Unmet }
    }

    pub fn is_unmet(self) -> bool {
        self == Self::Unmet
    }
}

impl fmt::Display for HypothesisStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HypothesisStatus::Met => "met",
            HypothesisStatus::Unmet => "unmet",
            HypothesisStatus::Asserted => "asserted",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypothesis {
    pub name: String,
    pub status: HypothesisStatus,
}

impl Hypothesis {
    pub fn new(name: impl Into<String>, status: HypothesisStatus) -> Self {
        Self { name: name.into(), status }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedVerdict {
    pub name: String,
    pub verdict: Verdict,
    /// Set when the verdict is vacuous or otherwise qualified.
    pub note: Option<String>,
}

impl NamedVerdict {
    pub fn new(name: impl Into<String>, verdict: Verdict) -> Self {
        Self { name: name.into(), verdict, note: None }
    }

    /// A claim that only applies when `condition` holds.
    pub fn conditional(name: impl Into<String>, condition: bool, verdict: Verdict, condition_text: &str) -> Self {
        if condition {
            Self::new(name, verdict)
        } else {
            Self {
                name: name.into(),
                verdict: Verdict::Holds,
                note: Some(format!("vacuous: {condition_text} is false")),
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        })
    }
}

/// An exact comparison `lhs rel rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactCheck {
    pub name: String,
    pub index: Option<usize>,
    pub lhs: Rational,
    pub relation: Relation,
    pub rhs: Rational,
}

impl ExactCheck {
    pub fn new(name: impl Into<String>, index: Option<usize>, lhs: Rational, relation: Relation, rhs: Rational) -> Self {
        Self { name: name.into(), index, lhs, relation, rhs }
    }

    pub fn holds(&self) -> bool {
        match self.relation {
            Relation::Le => self.lhs <= self.rhs,
            Relation::Ge => self.lhs >= self.rhs,
            Relation::Eq => self.lhs == self.rhs,
        }
    }
}
