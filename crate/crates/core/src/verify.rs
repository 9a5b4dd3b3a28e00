//! Verification suites: each runs a family of identities and returns one
//! report row per identity checked.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub parameters: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Informational rows do not gate the suite exit status.
    #[serde(default, skip_serializing_if = "is_false")]
    pub informational: bool,
}

fn is_false(b: &bool) -> bool {
    !*b
}

impl IdentityReport {
    pub fn new(identity: impl Into<String>, parameters: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        IdentityReport {
            identity: identity.into(),
            parameters: parameters.into(),
            residual,
            tolerance,
            pass: residual < tolerance,
            informational: false,
        }
    }

    pub fn info(mut self) -> Self {
        self.informational = true;
        self.pass = true;
        self
    }
}

/// A suite passes when every gating row passes.
pub fn all_pass(rows: &[IdentityReport]) -> bool {
    rows.iter().all(|r| r.informational || r.pass)
}
