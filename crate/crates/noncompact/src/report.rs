//! Verification results and their JSON / text renderings.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// The property checked, in words. Never empty.
    pub claim: String,
    pub pass: bool,
    /// Distance from failing, in the check's own units; `>= 0` on pass.
    pub margin: f64,
    pub details: String,
    /// Wall time; omitted from deterministic reports.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_seconds: Option<f64>,
}

impl CheckResult {
    /// A result whose pass flag follows `margin >= 0`.
    pub fn from_margin(name: &str, claim: &str, margin: f64, details: String) -> Self {
        assert!(!claim.is_empty(), "every check states its claim");
        CheckResult {
            name: name.to_string(),
            claim: claim.to_string(),
            pass: margin >= 0.0,
            margin,
            details,
            runtime_seconds: None,
        }
    }

    /// A check that could not run to completion.
    pub fn errored(name: &str, claim: &str, err: impl std::fmt::Display) -> Self {
        CheckResult {
            name: name.to_string(),
            claim: claim.to_string(),
            pass: false,
            margin: f64::NEG_INFINITY,
            details: format!("error: {err}"),
            runtime_seconds: None,
        }
    }

    pub fn with_runtime(mut self, elapsed: Duration) -> Self {
        self.runtime_seconds = Some(elapsed.as_secs_f64());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// All results of a `verify` run, in registry order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub p: f64,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(p: f64, seed: u64, checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        let summary = Summary {
            total: checks.len(),
            passed,
            failed: checks.len() - passed,
        };
        VerificationReport {
            p,
            seed,
            checks,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Drops wall times so that reports of identical runs compare equal byte for byte.
    pub fn without_runtime(mut self) -> Self {
        for c in &mut self.checks {
            c.runtime_seconds = None;
        }
        self
    }

    pub fn to_json(&self) -> String {
        // Non-finite margins (errored checks) have no JSON number; serde_json
        // writes them as null.
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = write!(
                out,
                "{} {:<28} margin={:+.3e}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.margin
            );
            if let Some(t) = c.runtime_seconds {
                let _ = write!(out, " time={t:.2}s");
            }
            let _ = writeln!(out, "  {}", c.details);
        }
        let _ = writeln!(
            out,
            "{} of {} checks passed (p = {}, seed = {})",
            self.summary.passed, self.summary.total, self.p, self.seed
        );
        out
    }
}
