//! Statistical checks: monotonicity of exit probabilities under Steiner
//! symmetrization, convergence along schedules, the Pólya–Szegő comparison
//! with regular polygons, eigenvalue ordering and sampler calibration.
//!
//! Every check returns a [`VerifyReport`]. Two estimates are compared against
//! three combined standard errors `3·√(se₁² + se₂²)`.

mod checks;
mod suite;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use checks::{
    check_eigenvalue_ordering, check_polya_szego, check_sampler_calibration,
    check_schedule_convergence, check_symmetrization_monotonicity, polya_szego_grid,
};
pub use suite::{
    Check, CheckSuite, EigenOrderingCheck, MonotonicityCheck, PolyaSzegoCheck,
    SamplerCalibrationCheck, ScheduleConvergenceCheck,
};

/// Multiple of the combined standard error used by every two-estimate test.
pub const SIGMA_MULTIPLIER: f64 = 3.0;

/// Outcome of one check. How `statistic` relates to `threshold` is stated in
/// `details["rule"]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub name: String,
    pub passed: bool,
    pub statistic: f64,
    pub threshold: f64,
    pub seed: u64,
    pub details: BTreeMap<String, Value>,
}

impl VerifyReport {
    pub(crate) fn new(
        name: impl Into<String>,
        passed: bool,
        statistic: f64,
        threshold: f64,
        seed: u64,
    ) -> Self {
        VerifyReport {
            name: name.into(),
            passed,
            statistic,
            threshold,
            seed,
            details: BTreeMap::new(),
        }
    }

    pub(crate) fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.details.insert(
            key.to_string(),
            serde_json::to_value(value).unwrap_or(Value::Null),
        );
        self
    }

    /// Failed report carrying an error message.
    pub fn from_error(name: impl Into<String>, seed: u64, err: &crate::Error) -> Self {
        VerifyReport::new(name, false, f64::NAN, f64::NAN, seed)
            .with("error", err.to_string())
            .with("error_kind", err.kind())
    }

    pub const CSV_HEADER: &'static str = "name,passed,statistic,threshold,seed";

    /// `name,passed,statistic,threshold,seed` with 17 significant digits.
    pub fn csv_row(&self) -> String {
        let name = if self.name.contains([',', '"']) {
            format!("\"{}\"", self.name.replace('"', "\"\""))
        } else {
            self.name.clone()
        };
        format!(
            "{},{},{:.16e},{:.16e},{}",
            name, self.passed, self.statistic, self.threshold, self.seed
        )
    }
}
