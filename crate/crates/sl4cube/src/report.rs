//! Verification reports: one entry per checked identity instance.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    /// The identity being certified, stated in plain notation.
    pub anchor: String,
    pub n: Option<u32>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a pass, or a fail carrying the witness produced by `witness`.
    pub fn record(
        &mut self,
        id: impl Into<String>,
        anchor: impl Into<String>,
        n: Option<u32>,
        outcome: Result<(), String>,
    ) {
        let (status, witness) = match outcome {
            Ok(()) => (Status::Pass, None),
            Err(w) => (Status::Fail, Some(w)),
        };
        self.checks.push(Check {
            id: id.into(),
            anchor: anchor.into(),
            n,
            status,
            witness,
        });
    }

    pub fn check(
        &mut self,
        id: impl Into<String>,
        anchor: impl Into<String>,
        n: Option<u32>,
        ok: bool,
        witness: impl FnOnce() -> String,
    ) {
        let outcome = if ok { Ok(()) } else { Err(witness()) };
        self.record(id, anchor, n, outcome);
    }

    pub fn skip(&mut self, id: impl Into<String>, anchor: impl Into<String>, n: Option<u32>) {
        self.checks.push(Check {
            id: id.into(),
            anchor: anchor.into(),
            n,
            status: Status::Skipped,
            witness: None,
        });
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_only_on_failure() {
        let mut r = VerificationReport::new();
        r.check("a", "x = x", Some(1), true, || "unused".into());
        r.check("b", "x = y", Some(1), false, || "x=1 y=2".into());
        r.skip("c", "too big", Some(9));
        assert_eq!(r.checks[0].witness, None);
        assert_eq!(r.checks[1].witness.as_deref(), Some("x=1 y=2"));
        assert!(!r.all_passed());
        assert_eq!(r.count(Status::Skipped), 1);
        assert_eq!(r.failures().count(), 1);
    }
}
