//! Structured run reports, printed for people or serialized as JSON.

use std::fmt;

use serde::Serialize;
use sha2::{Digest, Sha256};
use triple_core::{Error, VerificationReport};

/// Violations kept per check; the count is always exact.
pub const VIOLATION_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationEntry {
    pub indices: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub status: Status,
    pub violation_count: usize,
    pub violations: Vec<ViolationEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub construction: String,
    pub input: String,
    pub fingerprint: String,
    pub notes: Vec<String>,
    pub checks: Vec<CheckEntry>,
    pub passed: bool,
    pub timing_ms: u128,
}

/// Hex SHA-256 of the canonical input text.
pub fn fingerprint(canonical: &str) -> String {
    let digest = Sha256::digest(canonical.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

impl Report {
    pub fn new(construction: &str, input: &str, canonical: &str) -> Self {
        Report {
            construction: construction.into(),
            input: input.into(),
            fingerprint: fingerprint(canonical),
            notes: Vec::new(),
            checks: Vec::new(),
            passed: true,
            timing_ms: 0,
        }
    }

    fn push(&mut self, entry: CheckEntry) {
        if entry.status == Status::Fail {
            self.passed = false;
        }
        self.checks.push(entry);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// One entry per check of `r`, named `"{r.name}: {check}"`.
    pub fn add(&mut self, r: &VerificationReport) {
        for check in &r.checks {
            let hits: Vec<_> = r.violations.iter().filter(|v| &v.check == check).collect();
            let name = if r.name.is_empty() { check.clone() } else { format!("{}: {check}", r.name) };
            self.push(CheckEntry {
                name,
                status: if hits.is_empty() { Status::Pass } else { Status::Fail },
                violation_count: hits.len(),
                violations: hits
                    .iter()
                    .take(VIOLATION_CAP)
                    .map(|v| ViolationEntry { indices: v.indices.clone(), detail: v.detail.clone() })
                    .collect(),
                note: None,
            });
        }
        // violations filed under a check the report never declared
        for v in r.violations.iter().filter(|v| !r.checks.contains(&v.check)) {
            self.push(CheckEntry {
                name: format!("{}: {}", r.name, v.check),
                status: Status::Fail,
                violation_count: 1,
                violations: vec![ViolationEntry { indices: v.indices.clone(), detail: v.detail.clone() }],
                note: None,
            });
        }
    }

    pub fn add_result(&mut self, name: &str, r: triple_core::Result<VerificationReport>) {
        match r {
            Ok(r) => self.add(&r),
            Err(e) => self.add_error(name, &e),
        }
    }

    pub fn add_error(&mut self, name: &str, e: &Error) {
        self.push(CheckEntry {
            name: name.into(),
            status: Status::Fail,
            violation_count: 1,
            violations: Vec::new(),
            note: Some(e.to_string()),
        });
    }

    pub fn expect(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        let detail = detail.into();
        self.push(CheckEntry {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            violation_count: usize::from(!ok),
            violations: if ok { Vec::new() } else { vec![ViolationEntry { indices: Vec::new(), detail }] },
            note: None,
        });
    }

    pub fn not_applicable(&mut self, name: &str, reason: &str) {
        self.push(CheckEntry {
            name: name.into(),
            status: Status::NotApplicable,
            violation_count: 0,
            violations: Vec::new(),
            note: Some(reason.into()),
        });
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} of {} (sha256 {})", self.construction, self.input, &self.fingerprint[..16])?;
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::NotApplicable => "N/A ",
            };
            write!(f, "  {tag} {}", c.name)?;
            if c.violation_count > 0 {
                write!(f, " ({} violations)", c.violation_count)?;
            }
            if let Some(note) = &c.note {
                write!(f, ": {note}")?;
            }
            writeln!(f)?;
            for v in &c.violations {
                writeln!(f, "       at {:?}: {}", v.indices, v.detail)?;
            }
        }
        writeln!(
            f,
            "{}: {} passed, {} failed, {} not applicable in {} ms",
            if self.passed { "PASS" } else { "FAIL" },
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::NotApplicable),
            self.timing_ms
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn violations_are_capped_but_counted() {
        let mut v = VerificationReport::new("x");
        for i in 0..30 {
            v.violation("c", &[i], "bad");
        }
        let mut r = Report::new("verify", "in", "");
        r.add(&v);
        assert_eq!(r.checks[0].violation_count, 30);
        assert_eq!(r.checks[0].violations.len(), VIOLATION_CAP);
        assert!(!r.passed);
    }

    #[test]
    fn not_applicable_does_not_fail() {
        let mut r = Report::new("theorems", "in", "");
        r.not_applicable("rank", "no r");
        assert!(r.passed);
        assert!(r.to_json().contains("\"not-applicable\""));
    }

    #[test]
    fn fingerprint_is_sha256() {
        assert_eq!(fingerprint(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }
}
