//! Path samplers for Brownian motion and symmetric α-stable processes,
//! skeleton Monte Carlo estimators of exit probabilities, and closed-form
//! survival oracles for intervals and rectangles.
//!
//! At `α = 2` the exit estimators simulate standard planar Brownian motion
//! (generator `½Δ`, variance `t` per coordinate). For `α < 2` they simulate
//! `A_t = B_{2σ_t}` with `σ` a stable subordinator of index `α/2`, whose
//! characteristic function is `exp(-t|ξ|^α)`.

mod calibration;
mod exit;
mod oracle;
mod sampler;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use calibration::{
    characteristic_function_check, gaussian_variance_check, ks_two_sample, laplace_transform_check,
    CalibrationCheck, KsResult,
};
pub use exit::{
    estimate_eigenvalue, estimate_exit_curve, estimate_exit_probability, EigenEstimate,
};
pub use oracle::{interval_survival, interval_survival_series, rectangle_survival_exact};
pub use sampler::{gaussian_step, stable_step, stable_subordinator_step};

/// Paths per RNG substream.
pub const CHUNK_SIZE: usize = 4096;

/// Stability index `α ∈ (0, 2]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct StableIndex(f64);

impl StableIndex {
    pub const BROWNIAN: StableIndex = StableIndex(2.0);

    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha <= 2.0 {
            Ok(StableIndex(alpha))
        } else {
            Err(Error::Domain(format!(
                "alpha must lie in (0, 2], got {alpha}"
            )))
        }
    }

    pub fn alpha(self) -> f64 {
        self.0
    }

    pub fn is_brownian(self) -> bool {
        self.0 == 2.0
    }
}

impl TryFrom<f64> for StableIndex {
    type Error = Error;
    fn try_from(a: f64) -> Result<Self> {
        StableIndex::new(a)
    }
}

impl From<StableIndex> for f64 {
    fn from(a: StableIndex) -> f64 {
        a.0
    }
}

/// Simulation parameters: horizon `t`, `m` skeleton steps of length `t/m`,
/// `n` paths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimParams {
    pub t: f64,
    pub m: usize,
    pub n: usize,
    pub seed: u64,
    /// Brownian-bridge weighting of surviving steps; ignored unless `α = 2`.
    #[serde(default)]
    pub bridge_correction: bool,
}

impl SimParams {
    pub fn new(t: f64, m: usize, n: usize, seed: u64) -> Self {
        SimParams {
            t,
            m,
            n,
            seed,
            bridge_correction: false,
        }
    }

    pub fn with_bridge(mut self, on: bool) -> Self {
        self.bridge_correction = on;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t > 0.0 && self.t.is_finite()) {
            return Err(Error::Domain(format!("t must be positive, got {}", self.t)));
        }
        if self.m == 0 {
            return Err(Error::Domain("m must be at least 1".into()));
        }
        if self.n == 0 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        Ok(())
    }
}

/// Monte Carlo estimate of `P_x(τ_D > t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExitEstimate {
    pub p_hat: f64,
    pub std_err: f64,
    pub n: usize,
    pub m: usize,
    pub t: f64,
    pub alpha: f64,
    pub seed: u64,
    pub bridge: bool,
}

impl ExitEstimate {
    /// `(p_hat - 3 se, p_hat + 3 se)`, clipped to `[0, 1]`.
    pub fn ci3(&self) -> (f64, f64) {
        (
            (self.p_hat - 3.0 * self.std_err).max(0.0),
            (self.p_hat + 3.0 * self.std_err).min(1.0),
        )
    }
}

/// Root mean square of two standard errors.
pub fn combined_std_err(a: f64, b: f64) -> f64 {
    (a * a + b * b).sqrt()
}
