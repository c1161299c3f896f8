//! Verification records and report files.
//!
//! Each identity instance produces one [`VerificationRecord`]; suites write
//! them as JSON lines followed by a single summary object. Records are
//! append-only and serialized with string-valued numerics so consumers make
//! no integer-width assumptions.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Error,
}

/// One verified identity instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub check_id: String,
    /// Parameters (j, p, D, r, s, ...), stringly typed for stability.
    pub params: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
    /// Either a modulus like "13^2" or a tolerance like "1e-20".
    pub modulus_or_tolerance: String,
    pub status: Status,
    /// Certified or estimated bound on the comparison error, as a decimal
    /// string; empty when not applicable.
    pub error_bound: String,
    pub elapsed_ms: u64,
}

impl VerificationRecord {
    pub fn new(check_id: impl Into<String>) -> Self {
        VerificationRecord {
            check_id: check_id.into(),
            params: BTreeMap::new(),
            lhs: String::new(),
            rhs: String::new(),
            modulus_or_tolerance: String::new(),
            status: Status::Error,
            error_bound: String::new(),
            elapsed_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn sides(mut self, lhs: impl ToString, rhs: impl ToString) -> Self {
        self.lhs = lhs.to_string();
        self.rhs = rhs.to_string();
        self
    }

    pub fn modulus(mut self, m: impl ToString) -> Self {
        self.modulus_or_tolerance = m.to_string();
        self
    }

    pub fn error_bound(mut self, e: impl ToString) -> Self {
        self.error_bound = e.to_string();
        self
    }

    pub fn status(mut self, ok: bool) -> Self {
        self.status = if ok { Status::Pass } else { Status::Fail };
        self
    }

    pub fn skipped(mut self, why: impl ToString) -> Self {
        self.status = Status::Skipped;
        self.error_bound = why.to_string();
        self
    }

    pub fn errored(mut self, why: impl ToString) -> Self {
        self.status = Status::Error;
        self.error_bound = why.to_string();
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Canonical form used for determinism comparisons: timing excluded.
    pub fn canonical(&self) -> String {
        let mut c = self.clone();
        c.elapsed_ms = 0;
        serde_json::to_string(&c).expect("record serializes")
    }

    /// Canonical sort key so reports are independent of execution order.
    pub fn sort_key(&self) -> (String, Vec<(String, String)>) {
        (
            self.check_id.clone(),
            self.params.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
        )
    }
}

/// Aggregate counts appended as the final JSON object of a report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summary {
    pub suite: String,
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub error: usize,
}

impl Summary {
    pub fn of(suite: &str, records: &[VerificationRecord]) -> Self {
        let count = |s: Status| records.iter().filter(|r| r.status == s).count();
        Summary {
            suite: suite.to_string(),
            total: records.len(),
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            skipped: count(Status::Skipped),
            error: count(Status::Error),
        }
    }

    pub fn all_green(&self) -> bool {
        self.fail == 0 && self.error == 0
    }
}

/// Write records as JSON lines plus the trailing summary object.
pub fn write_report(
    path: &Path,
    suite: &str,
    records: &[VerificationRecord],
) -> crate::Result<Summary> {
    let mut sorted: Vec<&VerificationRecord> = records.iter().collect();
    sorted.sort_by_key(|r| r.sort_key());
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    for r in &sorted {
        let line = serde_json::to_string(r).expect("record serializes");
        writeln!(out, "{line}")?;
    }
    let summary = Summary::of(suite, records);
    writeln!(out, "{}", serde_json::to_string(&summary).expect("summary serializes"))?;
    out.flush()?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_roundtrip() {
        let r = VerificationRecord::new("demo")
            .param("j", 6)
            .param("p", 13)
            .sides("5", "5")
            .modulus("13^2")
            .status(true);
        let json = serde_json::to_string(&r).unwrap();
        let back: VerificationRecord = serde_json::from_str(&json).unwrap();
        assert!(back.passed());
        assert_eq!(back.params["p"], "13");
    }

    #[test]
    fn canonical_strips_timing() {
        let mut a = VerificationRecord::new("t").sides(1, 1).status(true);
        let mut b = a.clone();
        a.elapsed_ms = 5;
        b.elapsed_ms = 99;
        assert_eq!(a.canonical(), b.canonical());
    }
}
