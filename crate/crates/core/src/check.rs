//! Outcome types shared by the verification suites.

/// Result of running one family of exact checks.
#[derive(Clone, Debug)]
pub struct SuiteResult {
    /// What was checked, e.g. "fundamental identity".
    pub label: String,
    /// Number of individual checks performed.
    pub checks: usize,
    /// Human-readable descriptions of every failing check (empty on pass).
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn new(label: impl Into<String>) -> Self {
        SuiteResult { label: label.into(), checks: 0, failures: Vec::new() }
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(witness());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl std::fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.passed() {
            write!(f, "{}: ok ({} checks)", self.label, self.checks)
        } else {
            write!(
                f,
                "{}: FAILED {}/{} checks; first witness: {}",
                self.label,
                self.failures.len(),
                self.checks,
                self.failures[0]
            )
        }
    }
}
