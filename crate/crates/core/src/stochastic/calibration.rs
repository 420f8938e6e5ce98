use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sampler::{stable_step, subordinator_unchecked};
use super::{StableIndex, CHUNK_SIZE};
use crate::error::{Error, Result};
use crate::geometry::Point2;

/// Outcome of one sampler calibration test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationCheck {
    pub name: String,
    pub estimate: f64,
    pub expected: f64,
    pub std_err: f64,
    /// Allowed `|estimate - expected|`.
    pub tolerance: f64,
    pub passed: bool,
}

impl CalibrationCheck {
    fn new(name: String, estimate: f64, expected: f64, std_err: f64, tolerance: f64) -> Self {
        let passed = (estimate - expected).abs() <= tolerance;
        CalibrationCheck {
            name,
            estimate,
            expected,
            std_err,
            tolerance,
            passed,
        }
    }
}

/// Two-sample Kolmogorov–Smirnov statistic and its 1% critical value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub statistic: f64,
    pub critical: f64,
    pub passed: bool,
}

pub fn ks_two_sample(a: &[f64], b: &[f64]) -> KsResult {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    let critical = 1.628 * ((n + m) / (n * m)).sqrt();
    KsResult {
        statistic: d,
        critical,
        passed: d <= critical,
    }
}

// Mean and standard error of `f` over `n` draws, chunked like the estimators.
fn mc_mean<F>(n: usize, seed: u64, f: F) -> (f64, f64)
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    let chunks = n.div_ceil(CHUNK_SIZE);
    let parts: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let mut s = (0.0, 0.0);
            for _ in 0..CHUNK_SIZE.min(n - c * CHUNK_SIZE) {
                let v = f(&mut rng);
                s.0 += v;
                s.1 += v * v;
            }
            s
        })
        .collect();
    let (s, s2) = parts
        .iter()
        .fold((0.0, 0.0), |acc, p| (acc.0 + p.0, acc.1 + p.1));
    let nf = n as f64;
    let mean = s / nf;
    (mean, ((s2 / nf - mean * mean).max(0.0) / nf).sqrt())
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain("calibration needs at least two draws".into()));
    }
    Ok(())
}

/// Empirical `E e^{-λσ_t}` of the subordinator of index `index` against
/// `exp(-t λ^index)`, within three standard errors.
pub fn laplace_transform_check(
    index: f64,
    t: f64,
    lambda: f64,
    n: usize,
    seed: u64,
) -> Result<CalibrationCheck> {
    if !(index > 0.0 && index < 1.0) {
        return Err(Error::Domain(format!(
            "subordinator index must lie in (0, 1), got {index}"
        )));
    }
    check_n(n)?;
    let (est, se) = mc_mean(n, seed, |rng| {
        (-lambda * subordinator_unchecked(t, index, rng)).exp()
    });
    let name = format!("laplace index={index} t={t} lambda={lambda}");
    Ok(CalibrationCheck::new(
        name,
        est,
        (-t * lambda.powf(index)).exp(),
        se,
        3.0 * se,
    ))
}

/// Empirical `E cos(ξ·X_t)` of the α-stable step against `exp(-t|ξ|^α)`,
/// within three standard errors.
pub fn characteristic_function_check(
    idx: StableIndex,
    t: f64,
    xi: Point2,
    n: usize,
    seed: u64,
) -> Result<CalibrationCheck> {
    check_n(n)?;
    let (est, se) = mc_mean(n, seed, |rng| xi.dot(stable_step(t, idx, rng)).cos());
    let name = format!("charfn alpha={} t={t} xi=({}, {})", idx.alpha(), xi.x, xi.y);
    Ok(CalibrationCheck::new(
        name,
        est,
        (-t * xi.norm().powf(idx.alpha())).exp(),
        se,
        3.0 * se,
    ))
}

/// Per-coordinate variance of the `α = 2` step against `2t`, within 1%.
/// Reports the coordinate with the larger deviation.
pub fn gaussian_variance_check(t: f64, n: usize, seed: u64) -> Result<CalibrationCheck> {
    check_n(n)?;
    let expected = 2.0 * t;
    let mut worst: Option<(f64, f64)> = None;
    for axis in 0..2 {
        let (mean, _) = mc_mean(n, seed, |rng| {
            let p = stable_step(t, StableIndex::BROWNIAN, rng);
            if axis == 0 {
                p.x
            } else {
                p.y
            }
        });
        let (m2, se2) = mc_mean(n, seed, |rng| {
            let p = stable_step(t, StableIndex::BROWNIAN, rng);
            let v = if axis == 0 { p.x } else { p.y };
            v * v
        });
        let var = m2 - mean * mean;
        if worst.is_none_or(|(w, _)| (var - expected).abs() > (w - expected).abs()) {
            worst = Some((var, se2));
        }
    }
    let (var, se) = worst.expect("two axes");
    Ok(CalibrationCheck::new(
        format!("variance alpha=2 t={t}"),
        var,
        expected,
        se,
        0.01 * expected,
    ))
}
