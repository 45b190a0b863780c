//! Violation reports shared by every law checker.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// No violation found, but only a sample of the search space was swept.
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<String>,
    pub message: String,
}

/// Outcome of a law check: the full list of violations plus coverage status.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub status: Status,
    pub violations: Vec<Violation>,
}

impl Default for ValidationReport {
    fn default() -> Self {
        Self::new()
    }
}

impl ValidationReport {
    pub fn new() -> Self {
        Self {
            status: Status::Pass,
            violations: Vec::new(),
        }
    }

    pub fn push<W, S>(&mut self, law: &str, witness: W, message: impl Into<String>)
    where
        W: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.violations.push(Violation {
            law: law.to_owned(),
            witness: witness.into_iter().map(Into::into).collect(),
            message: message.into(),
        });
        self.status = Status::Fail;
    }

    /// Records that coverage was not exhaustive.
    pub fn mark_sampled(&mut self) {
        if self.status == Status::Pass {
            self.status = Status::Sampled;
        }
    }

    pub fn merge(&mut self, other: ValidationReport) {
        let sampled = other.status == Status::Sampled;
        for v in other.violations {
            self.violations.push(v);
            self.status = Status::Fail;
        }
        if sampled {
            self.mark_sampled();
        }
    }

    pub fn merged(mut self, other: ValidationReport) -> Self {
        self.merge(other);
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_law(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    pub fn find(&self, law: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.law == law)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Sampled => "SAMPLED",
        };
        write!(f, "{label} ({} violations)", self.violations.len())?;
        for v in &self.violations {
            write!(f, "\n{} [{}]: {}", v.law, v.witness.join(", "), v.message)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_renders_pass() {
        assert_eq!(ValidationReport::new().to_string(), "PASS (0 violations)");
    }

    #[test]
    fn one_violation_is_one_line() {
        let mut r = ValidationReport::new();
        r.push("left-identity", ["h"], "id;h != h");
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.to_string(), "FAIL (1 violations)\nleft-identity [h]: id;h != h");
    }

    #[test]
    fn sampled_never_masks_failure() {
        let mut a = ValidationReport::new();
        a.push("x", ["w"], "m");
        let mut b = ValidationReport::new();
        b.mark_sampled();
        a.merge(b);
        assert_eq!(a.status, Status::Fail);

        let mut c = ValidationReport::new();
        let mut d = ValidationReport::new();
        d.mark_sampled();
        c.merge(d);
        assert_eq!(c.status, Status::Sampled);
    }

    #[test]
    fn json_round_trip() {
        let mut r = ValidationReport::new();
        r.push("compatibility", ["S0", "m1", "b"], "mismatch");
        let text = serde_json::to_string(&r).unwrap();
        let back: ValidationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(r, back);
    }
}
