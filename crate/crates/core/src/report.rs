//! Structured pass/fail records shared by every verification suite.

use serde::{Deserialize, Serialize};
use std::time::Instant;

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    /// Short description of the identity or law the residual measures.
    pub reference: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Informational entries are reported but do not decide the suite outcome.
    #[serde(default = "default_gate")]
    pub gate: bool,
}

fn default_gate() -> bool {
    true
}

impl Check {
    pub fn new(id: &str, reference: &str, residual: f64, tolerance: f64) -> Self {
        Check {
            id: id.to_string(),
            reference: reference.to_string(),
            residual,
            tolerance,
            pass: residual <= tolerance,
            gate: true,
        }
    }

    /// A check whose outcome is recorded without gating the suite.
    pub fn informational(id: &str, reference: &str, residual: f64, tolerance: f64) -> Self {
        Check {
            gate: false,
            ..Check::new(id, reference, residual, tolerance)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub suite: String,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
}

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        SuiteReport {
            schema: REPORT_SCHEMA,
            suite: suite.to_string(),
            checks: Vec::new(),
            wall_time: None,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn check(&mut self, id: &str, reference: &str, residual: f64, tolerance: f64) {
        self.push(Check::new(id, reference, residual, tolerance));
    }

    pub fn extend(&mut self, other: SuiteReport) {
        self.checks.extend(other.checks);
    }

    /// True when every gating check passes.
    pub fn all_pass(&self) -> bool {
        self.checks.iter().filter(|c| c.gate).all(|c| c.pass)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.gate && !c.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.gate)
            .map(|c| c.residual)
            .fold(0.0, f64::max)
    }
}

/// Runs `f` and stores its wall time on the returned report.
pub fn timed(f: impl FnOnce() -> SuiteReport) -> SuiteReport {
    let start = Instant::now();
    let mut r = f();
    r.wall_time = Some(start.elapsed().as_secs_f64());
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_follows_tolerance() {
        assert!(Check::new("a", "x", 1e-13, 1e-12).pass);
        assert!(!Check::new("a", "x", 1e-11, 1e-12).pass);
        assert!(!Check::new("a", "x", f64::NAN, 1e-12).pass);
    }

    #[test]
    fn informational_checks_do_not_gate() {
        let mut r = SuiteReport::new("s");
        r.check("ok", "x", 0.0, 1.0);
        r.push(Check::informational("info", "x", 5.0, 1.0));
        assert!(r.all_pass());
        r.check("bad", "x", 2.0, 1.0);
        assert!(!r.all_pass());
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn json_round_trip_keeps_schema_and_omits_missing_time() {
        let mut r = SuiteReport::new("s");
        r.check("a", "x", 1e-13, 1e-12);
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"schema\":1") && !text.contains("wall_time"));
        let back: SuiteReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
