use std::fmt;

/// One failed instance of a check, e.g. a Jacobi triple that does not vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub check: String,
    pub indices: Vec<usize>,
    pub detail: String,
}

/// Outcome of a verification sweep. Violations are data: an empty report
/// means every instance of every check held exactly.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub name: String,
    pub checks: Vec<String>,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>) -> Self {
        VerificationReport { name: name.into(), checks: Vec::new(), violations: Vec::new() }
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn check(&mut self, check: impl Into<String>) {
        let check = check.into();
        if !self.checks.contains(&check) {
            self.checks.push(check);
        }
    }

    pub fn violation(&mut self, check: &str, indices: &[usize], detail: impl Into<String>) {
        self.check(check);
        self.violations.push(Violation {
            check: check.to_string(),
            indices: indices.to_vec(),
            detail: detail.into(),
        });
    }

    /// Adds `ok` as a named pass/fail check with no indices.
    pub fn expect(&mut self, check: &str, ok: bool, detail: impl Into<String>) {
        self.check(check);
        if !ok {
            self.violation(check, &[], detail);
        }
    }

    pub fn merge(&mut self, other: VerificationReport) {
        for check in other.checks {
            let prefixed = if other.name.is_empty() { check } else { format!("{}: {}", other.name, check) };
            self.check(prefixed);
        }
        for mut v in other.violations {
            if !other.name.is_empty() {
                v.check = format!("{}: {}", other.name, v.check);
            }
            self.violations.push(v);
        }
    }

    pub fn violations_of<'a>(&'a self, check: &'a str) -> impl Iterator<Item = &'a Violation> + 'a {
        self.violations.iter().filter(move |v| v.check == check || v.check.ends_with(&format!(": {check}")))
    }

    pub fn into_result(self) -> crate::Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(crate::Error::Verification(self))
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.is_ok() { "PASS" } else { "FAIL" };
        writeln!(f, "[{status}] {} ({} checks, {} violations)", self.name, self.checks.len(), self.violations.len())?;
        for v in self.violations.iter().take(20) {
            writeln!(f, "  {} {:?}: {}", v.check, v.indices, v.detail)?;
        }
        if self.violations.len() > 20 {
            writeln!(f, "  ... {} more", self.violations.len() - 20)?;
        }
        Ok(())
    }
}
