use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use super::StableIndex;
use crate::error::{Error, Result};
use crate::geometry::Point2;

/// Planar Gaussian increment with independent coordinates of variance `t_step`.
pub fn gaussian_step<R: Rng + ?Sized>(t_step: f64, rng: &mut R) -> Point2 {
    let s = t_step.sqrt();
    let x: f64 = rng.sample(StandardNormal);
    let y: f64 = rng.sample(StandardNormal);
    Point2::new(s * x, s * y)
}

/// One-sided stable increment with `E e^{-λσ} = exp(-t_step λ^index)`.
pub fn stable_subordinator_step<R: Rng + ?Sized>(
    t_step: f64,
    index: f64,
    rng: &mut R,
) -> Result<f64> {
    if !(index > 0.0 && index < 1.0) {
        return Err(Error::Domain(format!(
            "subordinator index must lie in (0, 1), got {index}"
        )));
    }
    Ok(subordinator_unchecked(t_step, index, rng))
}

// Kanter's representation of a standard positive stable variable.
pub(crate) fn subordinator_unchecked<R: Rng + ?Sized>(t_step: f64, beta: f64, rng: &mut R) -> f64 {
    let u = loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            break u * PI;
        }
    };
    let e: f64 = rng.sample(Exp1);
    let a = (beta * u).sin() / u.sin().powf(1.0 / beta);
    let b = (((1.0 - beta) * u).sin() / e).powf((1.0 - beta) / beta);
    (t_step.powf(1.0 / beta) * a * b).max(f64::MIN_POSITIVE)
}

/// Increment of the symmetric α-stable process over `t_step`, with
/// characteristic function `exp(-t_step |ξ|^α)`.
pub fn stable_step<R: Rng + ?Sized>(t_step: f64, idx: StableIndex, rng: &mut R) -> Point2 {
    if idx.is_brownian() {
        gaussian_step(2.0 * t_step, rng)
    } else {
        let s = subordinator_unchecked(t_step, 0.5 * idx.alpha(), rng);
        gaussian_step(2.0 * s, rng)
    }
}
