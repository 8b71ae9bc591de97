//! Pass/fail records shared by the numerical verifiers and the self-check suite.

use serde::Serialize;

/// One measured deviation against its tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub check: String,
    pub max_error: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(check: impl Into<String>, max_error: f64, tol: f64) -> Self {
        Check {
            check: check.into(),
            max_error,
            tol,
            // NaN must fail
            pass: max_error <= tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        VerificationReport { checks, pass }
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.check == name)
    }
}
