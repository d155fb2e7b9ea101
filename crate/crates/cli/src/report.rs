//! Deterministic run reports, in a human layout and a line-delimited
//! machine layout.

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// A documented failure: the check fails and the catalog says it must.
    ExpectedFail,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::ExpectedFail => "expected-fail",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Record {
    pub check: String,
    pub verdict: Verdict,
    pub witness: Option<String>,
}

/// One run over one input: every check in declaration order plus the
/// configuration needed to reproduce the run byte for byte.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub version: &'static str,
    pub input: String,
    pub digest: String,
    pub seed: u64,
    pub suite_size: usize,
    pub records: Vec<Record>,
}

impl RunReport {
    pub fn new(input: impl Into<String>, digest_source: &[u8], seed: u64, suite_size: usize) -> Self {
        RunReport {
            version: env!("CARGO_PKG_VERSION"),
            input: input.into(),
            digest: hex_digest(digest_source),
            seed,
            suite_size,
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, check: impl Into<String>, verdict: Verdict, witness: Option<String>) {
        self.records.push(Record { check: check.into(), verdict, witness });
    }

    /// True when no record carries an unexpected failure.
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.verdict != Verdict::Fail)
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("nambu {}\n", self.version));
        out.push_str(&format!("input: {} (sha256 {})\n", self.input, self.digest));
        out.push_str(&format!("seed: {:#010x}\n", self.seed));
        out.push_str(&format!("suite-size: {}\n\n", self.suite_size));
        for r in &self.records {
            out.push_str(&format!("{:>13}  {}\n", r.verdict.label(), r.check));
            if let Some(w) = &r.witness {
                // Failing records carry a witness; passing ones may carry
                // informative detail (a computed tensor, a core basis).
                let label = if r.verdict == Verdict::Pass { "detail" } else { "witness" };
                out.push_str(&format!("               {label}: {w}\n"));
            }
        }
        out.push_str(&format!(
            "\noverall: {}\n",
            if self.passed() { "pass" } else { "fail" }
        ));
        out
    }

    pub fn render_machine(&self) -> String {
        #[derive(Serialize)]
        struct Line<'a> {
            check: &'a str,
            input: &'a str,
            verdict: &'a str,
            #[serde(skip_serializing_if = "Option::is_none")]
            witness: Option<&'a str>,
        }
        let mut out = String::new();
        let configuration = format!(
            "sha256={} seed={:#010x} suite-size={}",
            self.digest, self.seed, self.suite_size
        );
        let head = Line {
            check: "configuration",
            input: &self.input,
            verdict: "pass",
            witness: Some(&configuration),
        };
        out.push_str(&serde_json::to_string(&head).expect("plain strings serialize"));
        out.push('\n');
        for r in &self.records {
            let line = Line {
                check: &r.check,
                input: &self.input,
                verdict: r.verdict.label(),
                witness: r.witness.as_deref(),
            };
            out.push_str(&serde_json::to_string(&line).expect("plain strings serialize"));
            out.push('\n');
        }
        out
    }
}

pub fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
