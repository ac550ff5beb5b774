//! Outcome records for verification checks.

use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

impl Status {
    /// Worst of two outcomes: fail dominates indeterminate dominates pass.
    pub fn combine(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Indeterminate, _) | (_, Indeterminate) => Indeterminate,
            _ => Pass,
        }
    }

    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Indeterminate => "indeterminate",
        })
    }
}

/// Result of one named check. Field order is the serialized key order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    pub status: Status,
    pub candidate_count: u64,
    pub witnesses: Vec<Vec<i64>>,
    pub precision_bits: u32,
    pub elapsed_ms: u64,
    /// Sub-check outcomes, escalations and other human-readable details.
    #[serde(default)]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(check_id: &str) -> Self {
        Self {
            check_id: check_id.to_string(),
            status: Status::Pass,
            candidate_count: 0,
            witnesses: Vec::new(),
            precision_bits: 0,
            elapsed_ms: 0,
            notes: Vec::new(),
        }
    }

    /// Folds a sub-check outcome into the report and records it as a note.
    pub fn sub(&mut self, name: &str, status: Status, detail: impl Into<String>) {
        self.status = self.status.combine(status);
        let detail = detail.into();
        if detail.is_empty() {
            self.notes.push(format!("{name}: {status}"));
        } else {
            self.notes.push(format!("{name}: {status} ({detail})"));
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn finish(mut self, started: Instant) -> Self {
        self.elapsed_ms = started.elapsed().as_millis() as u64;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combine_is_worst_case() {
        use Status::*;
        assert_eq!(Pass.combine(Pass), Pass);
        assert_eq!(Pass.combine(Indeterminate), Indeterminate);
        assert_eq!(Indeterminate.combine(Fail), Fail);
        assert_eq!(Fail.combine(Pass), Fail);
    }

    #[test]
    fn key_order_is_fixed() {
        let r = CheckReport::new("x");
        let s = serde_json::to_string(&r).unwrap();
        let keys = ["check_id", "status", "candidate_count", "witnesses", "precision_bits", "elapsed_ms"];
        let mut last = 0;
        for k in keys {
            let pos = s.find(&format!("\"{k}\"")).unwrap();
            assert!(pos >= last);
            last = pos;
        }
        assert!(s.contains("\"status\":\"pass\""));
    }
}
