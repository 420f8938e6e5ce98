//! Symmetrization schedules: sequences of Steiner symmetrizations that drive
//! a triangle to an equilateral triangle and a quadrilateral to a square,
//! while tracking the orthogonal projections of a starting point.
//!
//! Each schedule family is exposed both as free functions and as a
//! [`Schedule`] strategy; [`ScheduleRegistry`] looks strategies up by name.

mod quad;
mod rect;
mod registry;
mod triangle;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{hausdorff_distance, Line, Point2, Polygon, Transform};

pub use quad::{classify_quad, quad_to_rectangle, QuadKind};
pub use rect::{
    next_rect_sides, normalize_rectangle, rect_to_square_schedule, rectangle_frame,
    rhombus_side_length, rhombus_vertices, side_ratio_step, RectFrame, RectParams,
};
pub use registry::{
    QuadToRectangle, QuadToSquare, RectangleToSquare, Schedule, ScheduleRegistry, TriangleMediators,
};
pub use triangle::{equilateral_projection_schedule, triangle_schedule, triangle_step};

/// One element of a symmetrization sequence: the current domain, the tracked
/// point and the line used to produce them (`None` for the starting state).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateRepr", into = "StateRepr")]
pub struct ScheduleState {
    pub step: usize,
    pub polygon: Polygon,
    pub tracked: Point2,
    pub last_line: Option<Line>,
}

#[derive(Serialize, Deserialize)]
struct StateRepr {
    step: usize,
    vertices: Vec<Point2>,
    tracked: Point2,
    line: Option<Line>,
}

impl TryFrom<StateRepr> for ScheduleState {
    type Error = Error;
    fn try_from(r: StateRepr) -> Result<Self> {
        Ok(ScheduleState {
            step: r.step,
            polygon: Polygon::new(r.vertices)?,
            tracked: r.tracked,
            last_line: r.line,
        })
    }
}

impl From<ScheduleState> for StateRepr {
    fn from(s: ScheduleState) -> Self {
        StateRepr {
            step: s.step,
            vertices: s.polygon.vertices().to_vec(),
            tracked: s.tracked,
            line: s.last_line,
        }
    }
}

impl ScheduleState {
    pub fn initial(polygon: Polygon, tracked: Point2) -> Self {
        ScheduleState {
            step: 0,
            polygon,
            tracked,
            last_line: None,
        }
    }
}

/// Regular `n`-gon (`n` = 3 or 4) of the given area centred at the origin,
/// first vertex on the positive x-axis.
pub fn regular_polygon(n: usize, area: f64) -> Result<Polygon> {
    if n != 3 && n != 4 {
        return Err(Error::Unsupported(format!(
            "regular polygon with {n} sides"
        )));
    }
    if !(area > 0.0 && area.is_finite()) {
        return Err(Error::Domain(format!("area must be positive, got {area}")));
    }
    let step = 2.0 * PI / n as f64;
    let r = (2.0 * area / (n as f64 * step.sin())).sqrt();
    let v = (0..n)
        .map(|k| {
            let (s, c) = (k as f64 * step).sin_cos();
            Point2::new(r * c, r * s)
        })
        .collect();
    Polygon::new(v)
}

/// The regular polygon with the same vertex count, area and centroid as
/// `polygon`, rotated to minimise the Hausdorff distance to it.
///
/// The rotation is found by a coarse scan over one symmetry period followed by
/// golden-section refinement.
pub fn aligned_regular(polygon: &Polygon) -> Result<Polygon> {
    let n = polygon.len();
    let base = regular_polygon(n, polygon.area())?;
    let c = polygon.centroid();
    let pose = |theta: f64| base.transformed(&Transform::new(theta, c));
    let cost = |theta: f64| hausdorff_distance(&pose(theta), polygon);

    let period = 2.0 * PI / n as f64;
    const SCAN: usize = 90;
    let h = period / SCAN as f64;
    let best = (0..SCAN)
        .map(|k| k as f64 * h)
        .min_by(|&a, &b| cost(a).total_cmp(&cost(b)))
        .unwrap_or(0.0);

    let (mut lo, mut hi) = (best - h, best + h);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (cost(x1), cost(x2));
    for _ in 0..80 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = cost(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = cost(x2);
        }
    }
    Ok(pose(0.5 * (lo + hi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_3;

    #[test]
    fn regular_square_has_unit_side() {
        let q = regular_polygon(4, 1.0).unwrap();
        assert!((q.area() - 1.0).abs() < 1e-12);
        let v = q.vertices();
        assert!((v[0].distance(v[1]) - 1.0).abs() < 1e-12);
        assert!(v[0].y.abs() < 1e-15 && v[0].x > 0.0);
        assert!((q.min_interior_angle() - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn regular_triangle_of_unit_side() {
        let t = regular_polygon(3, 3f64.sqrt() / 4.0).unwrap();
        let v = t.vertices();
        for i in 0..3 {
            assert!((v[i].distance(v[(i + 1) % 3]) - 1.0).abs() < 1e-12);
        }
        assert!((t.min_interior_angle() - FRAC_PI_3).abs() < 1e-12);
        assert!(t.centroid().norm() < 1e-15);
    }

    #[test]
    fn regular_polygon_rejects_other_sizes() {
        assert!(matches!(
            regular_polygon(5, 1.0),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(regular_polygon(3, -1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn alignment_recovers_a_rotated_copy() {
        let t = regular_polygon(3, 2.0)
            .unwrap()
            .transformed(&Transform::new(0.7, Point2::new(1.0, -2.0)));
        let a = aligned_regular(&t).unwrap();
        assert!(hausdorff_distance(&a, &t) < 1e-9);
    }

    #[test]
    fn state_json_has_flat_vertices() {
        let s = ScheduleState::initial(regular_polygon(3, 1.0).unwrap(), Point2::ORIGIN);
        let j = serde_json::to_value(&s).unwrap();
        assert!(j.get("vertices").is_some() && j.get("line").is_some());
        let back: ScheduleState = serde_json::from_value(j).unwrap();
        assert_eq!(back, s);
    }
}
