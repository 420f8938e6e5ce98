use std::f64::consts::FRAC_PI_2;

use super::ScheduleState;
use crate::error::{Error, Result};
use crate::geometry::{project_point, steiner_symmetrize, Line, Point2, Polygon};

/// Relative tolerance for the side/angle predicates below.
const CLASSIFY_TOL: f64 = 1e-9;

/// Shape class driving the finite quadrilateral-to-rectangle algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadKind {
    Rectangle,
    Parallelogram,
    /// Congruent adjacent sides meet at vertices `apex` and `apex + 2`.
    Kite {
        apex: usize,
    },
    General,
}

fn rel_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= CLASSIFY_TOL * a.abs().max(b.abs())
}

pub fn classify_quad(q: &Polygon) -> Result<QuadKind> {
    if q.len() != 4 {
        return Err(Error::Unsupported(format!(
            "expected a quadrilateral, got a {}-gon",
            q.len()
        )));
    }
    if q.interior_angles()
        .iter()
        .all(|&a| (a - FRAC_PI_2).abs() <= CLASSIFY_TOL * FRAC_PI_2)
    {
        return Ok(QuadKind::Rectangle);
    }
    let e: Vec<Point2> = (0..4).map(|i| q.vertex(i + 1) - q.vertex(i)).collect();
    let parallel = |a: Point2, b: Point2| a.cross(b).abs() <= CLASSIFY_TOL * a.norm() * b.norm();
    if parallel(e[0], e[2]) && parallel(e[1], e[3]) {
        return Ok(QuadKind::Parallelogram);
    }
    let s: Vec<f64> = e.iter().map(|v| v.norm()).collect();
    if rel_eq(s[0], s[1]) && rel_eq(s[2], s[3]) {
        return Ok(QuadKind::Kite { apex: 1 });
    }
    if rel_eq(s[1], s[2]) && rel_eq(s[3], s[0]) {
        return Ok(QuadKind::Kite { apex: 0 });
    }
    Ok(QuadKind::General)
}

fn lex_key(a: Point2, b: Point2) -> [f64; 4] {
    let (p, q) = if (a.x, a.y) <= (b.x, b.y) {
        (a, b)
    } else {
        (b, a)
    };
    [p.x, p.y, q.x, q.y]
}

/// The symmetrization line for the next step, or `None` for a rectangle.
fn next_line(q: &Polygon) -> Result<Option<Line>> {
    Ok(match classify_quad(q)? {
        QuadKind::Rectangle => None,
        QuadKind::Parallelogram => {
            let (a, b) = (q.vertex(0), q.vertex(1));
            Some(Line::new(a.midpoint(b), (b - a).perp())?)
        }
        QuadKind::Kite { apex } => Some(Line::mediator(q.vertex(apex), q.vertex(apex + 2))?),
        QuadKind::General => {
            let d0 = (q.vertex(0), q.vertex(2));
            let d1 = (q.vertex(1), q.vertex(3));
            let (l0, l1) = (d0.0.distance(d0.1), d1.0.distance(d1.1));
            let pick = if rel_eq(l0, l1) {
                let (k0, k1) = (lex_key(d0.0, d0.1), lex_key(d1.0, d1.1));
                if k0.partial_cmp(&k1) != Some(std::cmp::Ordering::Greater) {
                    d0
                } else {
                    d1
                }
            } else if l0 > l1 {
                d0
            } else {
                d1
            };
            Some(Line::mediator(pick.0, pick.1)?)
        }
    })
}

/// Transforms a quadrilateral into a rectangle of the same area with at most
/// three Steiner symmetrizations (general → kite → parallelogram → rectangle),
/// tracking the projections of `x0`.
///
/// Returns the starting state followed by one state per symmetrization.
pub fn quad_to_rectangle(q: &Polygon, x0: Point2) -> Result<Vec<ScheduleState>> {
    if q.len() != 4 {
        return Err(Error::Unsupported(format!(
            "expected a quadrilateral, got a {}-gon",
            q.len()
        )));
    }
    let mut states = vec![ScheduleState::initial(q.clone(), x0)];
    for _ in 0..3 {
        let cur = states.last().expect("non-empty");
        let Some(line) = next_line(&cur.polygon)? else {
            return Ok(states);
        };
        let polygon = steiner_symmetrize(&cur.polygon, &line)?;
        if polygon.len() != 4 {
            return Err(Error::InvalidPolygon(format!(
                "quadrilateral step produced a {}-gon",
                polygon.len()
            )));
        }
        let next = ScheduleState {
            step: cur.step + 1,
            tracked: project_point(cur.tracked, &line),
            polygon,
            last_line: Some(line),
        };
        states.push(next);
    }
    match classify_quad(&states.last().expect("non-empty").polygon)? {
        QuadKind::Rectangle => Ok(states),
        other => Err(Error::InvalidPolygon(format!(
            "no rectangle after three symmetrizations (ended as {other:?})"
        ))),
    }
}
