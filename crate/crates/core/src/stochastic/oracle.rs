use std::f64::consts::PI;

use crate::geometry::Point2;

const SERIES_TOL: f64 = 1e-12;
const MAX_TERMS: usize = 1_000_000;

/// Truncated eigenfunction series for `P_x(τ_{(-a,a)} > t)` of a standard
/// one-dimensional Brownian motion, using `n_terms` odd modes.
///
/// Returns 0 for `|x| >= a`.
pub fn interval_survival_series(a: f64, x: f64, t: f64, n_terms: usize) -> f64 {
    if x.abs() >= a {
        return 0.0;
    }
    let mut s = 0.0;
    for k in 0..n_terms {
        let j = (2 * k + 1) as f64;
        s += 4.0 / (j * PI)
            * (j * PI * (x + a) / (2.0 * a)).sin()
            * (-j * j * PI * PI * t / (8.0 * a * a)).exp();
    }
    s.clamp(0.0, 1.0)
}

/// [`interval_survival_series`] with enough terms that the first omitted term
/// is below `1e-12`.
pub fn interval_survival(a: f64, x: f64, t: f64) -> f64 {
    if x.abs() >= a {
        return 0.0;
    }
    if t <= 0.0 {
        return 1.0;
    }
    let rate = PI * PI * t / (8.0 * a * a);
    let mut k = 0;
    while k < MAX_TERMS {
        let j = (2 * k + 1) as f64;
        if 4.0 / (j * PI) * (-j * j * rate).exp() < SERIES_TOL {
            break;
        }
        k += 1;
    }
    interval_survival_series(a, x, t, k)
}

/// Survival probability of planar Brownian motion in the rectangle
/// `[-l1/2, l1/2] × [-l2/2, l2/2]` started at `x0`.
pub fn rectangle_survival_exact(l1: f64, l2: f64, x0: Point2, t: f64) -> f64 {
    interval_survival(0.5 * l1, x0.x, t) * interval_survival(0.5 * l2, x0.y, t)
}
