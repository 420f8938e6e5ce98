use std::f64::consts::PI;

use super::{VerifyReport, SIGMA_MULTIPLIER};
use crate::error::{Error, Result};
use crate::geometry::{
    hausdorff_distance, project_point, steiner_symmetrize, Line, Point2, Polygon,
};
use crate::schedules::{regular_polygon, ScheduleState};
use crate::stochastic::{
    characteristic_function_check, combined_std_err, estimate_eigenvalue,
    estimate_exit_probability, gaussian_variance_check, laplace_transform_check, CalibrationCheck,
    ExitEstimate, SimParams, StableIndex,
};

const GRID_CAVEAT: &str =
    "the maximum over a finite grid is a lower bound for the supremum over the polygon";

/// `P_{x0}(τ_D > t) ≤ P_{x0#}(τ_{D#} > t)`: passes iff
/// `p̂(D#, x0#) - p̂(D, x0) ≥ -3·se`.
pub fn check_symmetrization_monotonicity(
    d: &Polygon,
    line: &Line,
    x0: Point2,
    idx: StableIndex,
    params: SimParams,
) -> Result<VerifyReport> {
    if !d.contains(x0) {
        return Err(Error::Domain(
            "starting point must lie in the polygon".into(),
        ));
    }
    let sym = steiner_symmetrize(d, line)?;
    let x_sym = project_point(x0, line);
    let before = estimate_exit_probability(d, x0, idx, params)?;
    let after = estimate_exit_probability(&sym, x_sym, idx, params)?;
    let se = combined_std_err(before.std_err, after.std_err);
    let stat = after.p_hat - before.p_hat;
    let threshold = -SIGMA_MULTIPLIER * se;
    Ok(VerifyReport::new(
        format!("monotonicity alpha={} t={}", idx.alpha(), params.t),
        stat >= threshold,
        stat,
        threshold,
        params.seed,
    )
    .with("rule", "statistic >= threshold")
    .with("original", before)
    .with("symmetrized", after)
    .with("x0", x0)
    .with("x0_projected", x_sym)
    .with("line", line))
}

/// Convergence of `(D_m, x_m)` to `(target, centroid(target))`.
///
/// Passes iff the final Hausdorff distance is below `1e-3·diam(target)`, the
/// final estimate agrees with the target's within three combined standard
/// errors, and no step decreases the estimate by more than three combined
/// standard errors. The schedule estimates share `params`; the target uses
/// seed `params.seed + 1`.
pub fn check_schedule_convergence(
    schedule: &[ScheduleState],
    target: &Polygon,
    idx: StableIndex,
    params: SimParams,
) -> Result<VerifyReport> {
    let last = schedule
        .last()
        .ok_or_else(|| Error::Domain("empty schedule".into()))?;
    let hd: Vec<f64> = schedule
        .iter()
        .map(|s| hausdorff_distance(&s.polygon, target))
        .collect();
    let hd_tol = 1e-3 * target.diameter();
    let hd_final = *hd.last().expect("non-empty");

    let estimates = schedule
        .iter()
        .map(|s| estimate_exit_probability(&s.polygon, s.tracked, idx, params))
        .collect::<Result<Vec<ExitEstimate>>>()?;
    let x_target = target.centroid();
    // independent paths for the limit, matching the combined standard error
    let limit = estimate_exit_probability(
        target,
        x_target,
        idx,
        params.with_seed(params.seed.wrapping_add(1)),
    )?;

    let mut worst_drop = f64::INFINITY;
    let mut monotone = true;
    for w in estimates.windows(2) {
        let margin = w[1].p_hat - w[0].p_hat
            + SIGMA_MULTIPLIER * combined_std_err(w[0].std_err, w[1].std_err);
        worst_drop = worst_drop.min(margin);
        monotone &= margin >= 0.0;
    }
    let end = estimates.last().expect("non-empty");
    let stat = (end.p_hat - limit.p_hat).abs();
    let threshold = SIGMA_MULTIPLIER * combined_std_err(end.std_err, limit.std_err);
    let passed = hd_final < hd_tol && stat <= threshold && monotone;
    Ok(VerifyReport::new(
        format!("schedule convergence alpha={} t={}", idx.alpha(), params.t),
        passed,
        stat,
        threshold,
        params.seed,
    )
    .with(
        "rule",
        "statistic <= threshold, final hausdorff < tolerance, sequence non-decreasing within 3 se",
    )
    .with("steps", last.step)
    .with("hausdorff", &hd)
    .with("hausdorff_final", hd_final)
    .with("hausdorff_tolerance", hd_tol)
    .with(
        "p_hat",
        estimates.iter().map(|e| e.p_hat).collect::<Vec<_>>(),
    )
    .with(
        "std_err",
        estimates.iter().map(|e| e.std_err).collect::<Vec<_>>(),
    )
    .with("monotone", monotone)
    .with(
        "min_monotone_margin",
        if worst_drop.is_finite() {
            worst_drop
        } else {
            0.0
        },
    )
    .with("limit", limit)
    .with("limit_start", x_target))
}

/// Interior sample points of a triangle or quadrilateral at the given
/// resolution: barycentric `(i+½)/r, (j+½)/r` for triangles, a bilinear image
/// of the `r×r` cell-centre grid for quadrilaterals. Points outside the
/// polygon are dropped.
pub fn polya_szego_grid(p: &Polygon, resolution: usize) -> Result<Vec<Point2>> {
    if resolution == 0 {
        return Err(Error::Domain("grid resolution must be at least 1".into()));
    }
    let r = resolution as f64;
    let v = p.vertices();
    let mut pts = Vec::new();
    match v.len() {
        3 => {
            for i in 0..resolution {
                for j in 0..resolution {
                    let (u, w) = ((i as f64 + 0.5) / r, (j as f64 + 0.5) / r);
                    if u + w < 1.0 {
                        pts.push(v[0] * u + v[1] * w + v[2] * (1.0 - u - w));
                    }
                }
            }
        }
        4 => {
            for i in 0..resolution {
                for j in 0..resolution {
                    let (s, t) = ((i as f64 + 0.5) / r, (j as f64 + 0.5) / r);
                    pts.push(
                        v[0] * ((1.0 - s) * (1.0 - t))
                            + v[1] * (s * (1.0 - t))
                            + v[2] * (s * t)
                            + v[3] * ((1.0 - s) * t),
                    );
                }
            }
        }
        n => return Err(Error::Unsupported(format!("grid for a {n}-gon"))),
    }
    pts.retain(|&q| p.contains(q) && p.boundary_distance(q) > 0.0);
    Ok(pts)
}

/// `max_x P_x(τ_P > t) ≤ P_0(τ_{R_n} > t)` with `R_n` the regular `n`-gon of
/// the same area centred at the origin. The maximum is taken over
/// [`polya_szego_grid`] with `params.n` paths per point; the centre of `R_n`
/// uses `center_paths`. Grid point `k` uses seed `params.seed + k + 1`.
pub fn check_polya_szego(
    n: usize,
    p: &Polygon,
    idx: StableIndex,
    params: SimParams,
    grid_resolution: usize,
    center_paths: usize,
) -> Result<VerifyReport> {
    if p.len() != n {
        return Err(Error::Unsupported(format!(
            "expected a {n}-gon, got {} vertices",
            p.len()
        )));
    }
    let regular = regular_polygon(n, p.area())?;
    let center = estimate_exit_probability(
        &regular,
        Point2::ORIGIN,
        idx,
        SimParams {
            n: center_paths,
            ..params
        },
    )?;
    let grid = polya_szego_grid(p, grid_resolution)?;
    if grid.is_empty() {
        return Err(Error::Domain("grid has no interior points".into()));
    }
    let mut best: Option<(usize, ExitEstimate)> = None;
    for (k, &x) in grid.iter().enumerate() {
        let e = estimate_exit_probability(
            p,
            x,
            idx,
            params.with_seed(params.seed.wrapping_add(k as u64 + 1)),
        )?;
        if best.is_none_or(|(_, b)| e.p_hat > b.p_hat) {
            best = Some((k, e));
        }
    }
    let (k, top) = best.expect("non-empty grid");
    let stat = top.p_hat - center.p_hat;
    let threshold = SIGMA_MULTIPLIER * combined_std_err(top.std_err, center.std_err);
    Ok(VerifyReport::new(
        format!("polya-szego n={n} alpha={} t={}", idx.alpha(), params.t),
        stat <= threshold,
        stat,
        threshold,
        params.seed,
    )
    .with("rule", "statistic <= threshold")
    .with("grid_resolution", grid_resolution)
    .with("grid_points", grid.len())
    .with("grid_max", top)
    .with("argmax", grid[k])
    .with("regular_center", center)
    .with("regular", &regular)
    .with("caveat", GRID_CAVEAT))
}

/// `λ(P) ≥ λ(R_n) - 3·se` for Brownian motion, with both eigenvalues
/// estimated from the log-slope between `t1` and `t2` started at the
/// centroids. Also reports the closed-form `λ(R_n)` of `-½Δ`.
pub fn check_eigenvalue_ordering(
    n: usize,
    p: &Polygon,
    params: SimParams,
    t1: f64,
    t2: f64,
) -> Result<VerifyReport> {
    if p.len() != n {
        return Err(Error::Unsupported(format!(
            "expected a {n}-gon, got {} vertices",
            p.len()
        )));
    }
    let regular = regular_polygon(n, p.area())?;
    let idx = StableIndex::BROWNIAN;
    let lp = estimate_eigenvalue(p, p.centroid(), idx, params, t1, t2)?;
    let lr = estimate_eigenvalue(&regular, Point2::ORIGIN, idx, params, t1, t2)?;
    let exact_regular = match n {
        // square of side L: π²/L²; equilateral of side s: 8π²/(3s²)
        4 => PI * PI / p.area(),
        _ => {
            let s2 = 4.0 * p.area() / 3f64.sqrt();
            8.0 * PI * PI / (3.0 * s2)
        }
    };
    let stat = lp.lambda - lr.lambda;
    let threshold = -SIGMA_MULTIPLIER * combined_std_err(lp.std_err, lr.std_err);
    Ok(VerifyReport::new(
        format!("eigenvalue ordering n={n}"),
        stat >= threshold,
        stat,
        threshold,
        params.seed,
    )
    .with("rule", "statistic >= threshold")
    .with("lambda_polygon", lp)
    .with("lambda_regular", lr)
    .with("lambda_regular_exact", exact_regular))
}

/// Sampler checks for one α: the characteristic function at `|ξ| = 1` and
/// `|ξ| = 2`, plus the variance at `α = 2` or the subordinator Laplace
/// transform at `λ ∈ {0.5, 1, 2}` otherwise. Uses `params.t`, `params.n` and
/// `params.seed`.
pub fn check_sampler_calibration(idx: StableIndex, params: SimParams) -> Result<VerifyReport> {
    params.validate()?;
    let (t, n, seed) = (params.t, params.n, params.seed);
    let mut checks: Vec<CalibrationCheck> = vec![
        characteristic_function_check(idx, t, Point2::new(1.0, 0.0), n, seed)?,
        characteristic_function_check(idx, t, Point2::new(1.2, 1.6), n, seed.wrapping_add(1))?,
    ];
    if idx.is_brownian() {
        checks.push(gaussian_variance_check(t, n, seed.wrapping_add(2))?);
    } else {
        for (k, lambda) in [0.5, 1.0, 2.0].into_iter().enumerate() {
            checks.push(laplace_transform_check(
                0.5 * idx.alpha(),
                t,
                lambda,
                n,
                seed.wrapping_add(3 + k as u64),
            )?);
        }
    }
    let ratio = checks
        .iter()
        .map(|c| {
            if c.tolerance > 0.0 {
                (c.estimate - c.expected).abs() / c.tolerance
            } else {
                0.0
            }
        })
        .fold(0.0, f64::max);
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport::new(
        format!("sampler calibration alpha={} t={t}", idx.alpha()),
        passed,
        ratio,
        1.0,
        seed,
    )
    .with(
        "rule",
        "every |estimate - expected| <= tolerance; statistic is the largest ratio",
    )
    .with("checks", checks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedules::triangle_schedule;

    fn scalene() -> Polygon {
        Polygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.6, 0.0),
            Point2::new(0.4, 1.25),
        ])
        .unwrap()
    }

    #[test]
    fn symmetric_domain_gives_equal_estimates() {
        let sq = Polygon::rectangle(-0.5, -0.5, 0.5, 0.5).unwrap();
        let r = check_symmetrization_monotonicity(
            &sq,
            &Line::y_axis(),
            Point2::new(0.0, 0.1),
            StableIndex::BROWNIAN,
            SimParams::new(0.2, 32, 4000, 1),
        )
        .unwrap();
        assert!(r.passed);
        assert!(r.statistic.abs() < 1e-12);
    }

    #[test]
    fn scalene_mediator_monotonicity() {
        let t = scalene();
        let line = Line::mediator(t.vertex(0), t.vertex(1)).unwrap();
        for alpha in [2.0, 1.0] {
            let r = check_symmetrization_monotonicity(
                &t,
                &line,
                Point2::new(0.3, 0.3),
                StableIndex::new(alpha).unwrap(),
                SimParams::new(0.05, 32, 20_000, 3),
            )
            .unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn outside_start_is_rejected() {
        let t = scalene();
        let line = Line::mediator(t.vertex(0), t.vertex(1)).unwrap();
        assert!(check_symmetrization_monotonicity(
            &t,
            &line,
            Point2::new(5.0, 5.0),
            StableIndex::BROWNIAN,
            SimParams::new(0.1, 4, 10, 0)
        )
        .is_err());
    }

    #[test]
    fn constant_schedule_passes() {
        let eq = regular_polygon(3, 1.0).unwrap();
        let s = triangle_schedule(&eq, Point2::ORIGIN, 3).unwrap();
        let r = check_schedule_convergence(
            &s,
            &eq,
            StableIndex::BROWNIAN,
            SimParams::new(0.05, 16, 2000, 4),
        )
        .unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.details["monotone"], true);
    }

    #[test]
    fn triangle_grid_is_interior() {
        let t = scalene();
        let g = polya_szego_grid(&t, 15).unwrap();
        assert_eq!(g.len(), 15 * 14 / 2);
        assert!(g.iter().all(|&q| t.contains(q)));
        let sq = Polygon::rectangle(0.0, 0.0, 1.0, 1.0).unwrap();
        assert_eq!(polya_szego_grid(&sq, 4).unwrap().len(), 16);
        assert!(polya_szego_grid(&sq, 0).is_err());
    }

    #[test]
    fn regular_polygon_against_itself() {
        let sq = regular_polygon(4, 1.0).unwrap();
        let r = check_polya_szego(
            4,
            &sq,
            StableIndex::BROWNIAN,
            SimParams::new(0.1, 16, 2000, 5),
            3,
            20_000,
        )
        .unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.details.contains_key("caveat"));
        assert!(check_polya_szego(
            3,
            &sq,
            StableIndex::BROWNIAN,
            SimParams::new(0.1, 16, 10, 5),
            3,
            10
        )
        .is_err());
    }

    #[test]
    fn calibration_passes_for_each_alpha() {
        for alpha in [2.0, 1.5, 1.0, 0.5] {
            let r = check_sampler_calibration(
                StableIndex::new(alpha).unwrap(),
                SimParams::new(1.0, 1, 100_000, 8),
            )
            .unwrap();
            assert!(r.passed, "{r:?}");
        }
    }
}
