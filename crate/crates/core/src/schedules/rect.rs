use serde::{Deserialize, Serialize};

use super::quad::{classify_quad, QuadKind};
use super::ScheduleState;
use crate::error::{Error, Result};
use crate::geometry::{steiner_symmetrize, Line, Point2, Polygon, Transform};

/// Half-width `a` and half-height `b` of the rectangle with vertices
/// `(a, b), (-a, b), (-a, -b), (a, -b)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RectParams {
    pub a: f64,
    pub b: f64,
}

impl RectParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::Domain(format!(
                "rectangle half-sides must be positive, got ({a}, {b})"
            )));
        }
        Ok(RectParams { a, b })
    }

    pub fn polygon(&self) -> Polygon {
        let (a, b) = (self.a, self.b);
        Polygon::from_ccw_unchecked(vec![
            Point2::new(a, b),
            Point2::new(-a, b),
            Point2::new(-a, -b),
            Point2::new(a, -b),
        ])
    }

    /// Short side over long side, in `(0, 1]`.
    pub fn aspect(&self) -> f64 {
        self.a.min(self.b) / self.a.max(self.b)
    }
}

/// Vertices of the rhombus obtained by symmetrizing the rectangle about the
/// line through the origin perpendicular to the diagonal `(a, b)–(-a, -b)`.
pub fn rhombus_vertices(r: RectParams) -> [Point2; 4] {
    let (a, b) = (r.a, r.b);
    let s = a * a + b * b;
    [
        Point2::new(a, b),
        Point2::new(-2.0 * a * b * b / s, 2.0 * a * a * b / s),
        Point2::new(-a, -b),
        Point2::new(2.0 * a * b * b / s, -2.0 * a * a * b / s),
    ]
}

pub fn rhombus_side_length(r: RectParams) -> f64 {
    let (a2, b2) = (r.a * r.a, r.b * r.b);
    (a2 * a2 * a2 + 7.0 * a2 * a2 * b2 + 7.0 * a2 * b2 * b2 + b2 * b2 * b2).sqrt() / (a2 + b2)
}

/// Full side lengths `(a', b')` of the rectangle produced from the rhombus by
/// symmetrizing perpendicular to one of its sides; `a' b' = 4ab`.
pub fn next_rect_sides(r: RectParams) -> (f64, f64) {
    let (a2, b2) = (r.a * r.a, r.b * r.b);
    let q = a2 * a2 + 6.0 * a2 * b2 + b2 * b2;
    let s = a2 + b2;
    ((q / s).sqrt(), 4.0 * r.a * r.b * (s / q).sqrt())
}

/// One step of the side-ratio recurrence `c -> (4c³ + 4c) / (c⁴ + 6c² + 1)`.
pub fn side_ratio_step(c: f64) -> Result<f64> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Domain(format!(
            "side ratio must be positive, got {c}"
        )));
    }
    let c2 = c * c;
    Ok((4.0 * c2 * c + 4.0 * c) / (c2 * c2 + 6.0 * c2 + 1.0))
}

/// Orthonormal frame of a rectangle polygon `v0..v3` in which its vertices
/// read `(a, b), (-a, b), (-a, -b), (a, -b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectFrame {
    pub center: Point2,
    pub e1: Point2,
    pub e2: Point2,
    pub params: RectParams,
}

impl RectFrame {
    pub fn to_world(&self, local: Point2) -> Point2 {
        self.center + self.e1 * local.x + self.e2 * local.y
    }

    /// Rigid motion taking world coordinates to frame coordinates.
    pub fn to_local_transform(&self) -> Transform {
        let theta = -self.e1.y.atan2(self.e1.x);
        Transform::new(theta, -self.center.rotate(theta))
    }
}

/// Frame of `p` if it is a rectangle (angles π/2 within 1e-9 relative).
pub fn rectangle_frame(p: &Polygon) -> Option<RectFrame> {
    if p.len() != 4 || classify_quad(p).ok()? != QuadKind::Rectangle {
        return None;
    }
    let (v0, v1, v2) = (p.vertex(0), p.vertex(1), p.vertex(2));
    let (w, h) = (v0.distance(v1), v1.distance(v2));
    Some(RectFrame {
        center: v0.midpoint(v2),
        e1: (v0 - v1) * (1.0 / w),
        e2: (v1 - v2) * (1.0 / h),
        params: RectParams {
            a: 0.5 * w,
            b: 0.5 * h,
        },
    })
}

/// Half-sides of a rectangle polygon and the rigid motion that centres it at
/// the origin with axis-aligned sides.
pub fn normalize_rectangle(p: &Polygon) -> Result<(RectParams, Transform)> {
    let frame = rectangle_frame(p)
        .ok_or_else(|| Error::Unsupported("polygon is not a rectangle".into()))?;
    Ok((frame.params, frame.to_local_transform()))
}

fn start_near(p: &Polygon, target: Point2) -> Polygon {
    let k = (0..p.len())
        .min_by(|&i, &j| {
            p.vertex(i)
                .distance(target)
                .total_cmp(&p.vertex(j).distance(target))
        })
        .unwrap_or(0);
    p.rotated_start(k)
}

/// Rectangle-to-square iteration for the origin-centred rectangle `r`.
///
/// Each stage symmetrizes about the line through the origin perpendicular to
/// the diagonal `v0 v2` (giving a rhombus) and then about the line through the
/// origin perpendicular to the rhombus side `v0 v1` (giving a rectangle). The
/// tracked point is the origin throughout. Returns the starting state plus two
/// states per stage.
pub fn rect_to_square_schedule(r: RectParams, stages: usize) -> Result<Vec<ScheduleState>> {
    let r = RectParams::new(r.a, r.b)?;
    let mut states = vec![ScheduleState::initial(r.polygon(), Point2::ORIGIN)];
    for _ in 0..stages {
        let rect = states.last().expect("non-empty").polygon.clone();
        let l1 = Line::new(Point2::ORIGIN, (rect.vertex(0) - rect.vertex(2)).perp())?;
        let rhombus = start_near(&steiner_symmetrize(&rect, &l1)?, rect.vertex(0));
        let step = states.len();
        states.push(ScheduleState {
            step,
            polygon: rhombus.clone(),
            tracked: Point2::ORIGIN,
            last_line: Some(l1),
        });
        let l2 = Line::new(
            Point2::ORIGIN,
            (rhombus.vertex(1) - rhombus.vertex(0)).perp(),
        )?;
        let next = start_near(&steiner_symmetrize(&rhombus, &l2)?, rect.vertex(0));
        states.push(ScheduleState {
            step: step + 1,
            polygon: next,
            tracked: Point2::ORIGIN,
            last_line: Some(l2),
        });
    }
    Ok(states)
}
