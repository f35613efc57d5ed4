use serde::{Deserialize, Serialize};

/// Absolute tolerances shared by every module.
///
/// Coordinates are assumed to be of desk magnitude (|x| ≲ 10), so all
/// thresholds are absolute.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ToleranceConfig {
    /// Geometric predicates: on-line, inside, breakpoint proximity, convexity.
    pub geometric: f64,
    /// Envelope residuals `F` and `∂F/∂θ`.
    pub residual: f64,
    /// Analytic derivative vs. central finite difference.
    pub finite_difference: f64,
    /// Step of the central finite difference.
    pub fd_step: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            geometric: 1e-9,
            residual: 1e-10,
            finite_difference: 1e-6,
            fd_step: 1e-5,
        }
    }
}

impl ToleranceConfig {
    pub fn is_valid(&self) -> bool {
        [self.geometric, self.residual, self.finite_difference, self.fd_step]
            .iter()
            .all(|t| t.is_finite() && *t > 0.0)
    }
}
