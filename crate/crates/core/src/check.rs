//! Outcomes of verification routines.

use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    /// A detected discrepancy in the source data that the tool reports
    /// without deciding which reading is intended.
    Anomaly,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Anomaly => "anomaly",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The inputs and both sides of a violated identity, rendered exactly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Counterexample {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

impl Counterexample {
    pub fn new(input: impl Into<String>, lhs: impl fmt::Display, rhs: impl fmt::Display) -> Self {
        Counterexample { input: input.into(), lhs: lhs.to_string(), rhs: rhs.to_string() }
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: lhs = {}, rhs = {}", self.input, self.lhs, self.rhs)
    }
}

/// Pass/fail outcome of an identity check.
pub type Outcome = std::result::Result<(), Counterexample>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: Option<String>,
    pub counterexample: Option<Counterexample>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Pass, detail: None, counterexample: None }
    }

    pub fn fail(name: impl Into<String>, cx: Counterexample) -> Self {
        Check { name: name.into(), status: Status::Fail, detail: None, counterexample: Some(cx) }
    }

    pub fn anomaly(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Anomaly,
            detail: Some(detail.into()),
            counterexample: None,
        }
    }

    pub fn from_outcome(name: impl Into<String>, outcome: Outcome) -> Self {
        match outcome {
            Ok(()) => Check::pass(name),
            Err(cx) => Check::fail(name, cx),
        }
    }

    /// Errors from the engine count as failures; the message stands in for both sides.
    pub fn from_result(name: impl Into<String>, r: crate::Result<Outcome>) -> Self {
        match r {
            Ok(o) => Check::from_outcome(name, o),
            Err(e) => Check::fail(name, Counterexample::new("error", e.to_string(), "-")),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.status, self.name)?;
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        if let Some(cx) = &self.counterexample {
            write!(f, " -- {cx}")?;
        }
        Ok(())
    }
}
