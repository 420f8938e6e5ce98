use std::f64::consts::PI;

use super::ScheduleState;
use crate::error::{Error, Result};
use crate::geometry::{project_point, steiner_symmetrize, Line, Point2, Polygon};

/// Cyclic shift of `out` that best matches the vertices of `reference`.
fn align_start(out: &Polygon, reference: &Polygon) -> Polygon {
    let n = out.len();
    let k = (0..n)
        .min_by(|&a, &b| {
            let cost = |k: usize| -> f64 {
                (0..n)
                    .map(|i| out.vertex(i + k).distance(reference.vertex(i)))
                    .sum()
            };
            cost(a).total_cmp(&cost(b))
        })
        .unwrap_or(0);
    out.rotated_start(k)
}

/// Symmetrizes a triangle about the mediator of side `side` (the side from
/// vertex `side` to vertex `side + 1`) and projects the tracked point onto it.
///
/// The side itself is left in place, so the output keeps the input's vertex
/// labelling: only the vertex opposite the side moves.
pub fn triangle_step(state: &ScheduleState, side: usize) -> Result<ScheduleState> {
    let t = &state.polygon;
    if t.len() != 3 {
        return Err(Error::Unsupported(format!(
            "triangle step on a {}-gon",
            t.len()
        )));
    }
    if side > 2 {
        return Err(Error::Unsupported(format!(
            "side index {side} out of range"
        )));
    }
    let line = Line::mediator(t.vertex(side), t.vertex(side + 1))?;
    let out = steiner_symmetrize(t, &line)?;
    if out.len() != 3 {
        return Err(Error::InvalidPolygon(format!(
            "mediator symmetrization produced a {}-gon",
            out.len()
        )));
    }
    Ok(ScheduleState {
        step: state.step + 1,
        polygon: align_start(&out, t),
        tracked: project_point(state.tracked, &line),
        last_line: Some(line),
    })
}

/// Symmetrizes about the mediators of sides 0, 1, 2, 0, 1, 2, ... and returns
/// the starting state followed by `steps` symmetrized states.
pub fn triangle_schedule(
    triangle: &Polygon,
    x0: Point2,
    steps: usize,
) -> Result<Vec<ScheduleState>> {
    if triangle.len() != 3 {
        return Err(Error::Unsupported(format!(
            "triangle schedule on a {}-gon",
            triangle.len()
        )));
    }
    let mut states = Vec::with_capacity(steps + 1);
    states.push(ScheduleState::initial(triangle.clone(), x0));
    for k in 0..steps {
        let next = triangle_step(&states[k], k % 3)?;
        states.push(next);
    }
    Ok(states)
}

/// Successive projections of `x0` onto the lines joining the centre of the
/// reference equilateral triangle to its vertices, taken in the order
/// `l_1, l_2, l_3, l_1, ...`.
///
/// The reference triangle is centred at the origin with its first vertex on
/// the positive x-axis, so consecutive lines meet at an angle of π/3 and each
/// projection after the first halves the norm. The returned list starts with
/// the projection onto `l_1`; the triangle itself never changes.
pub fn equilateral_projection_schedule(x0: Point2, steps: usize) -> Vec<Point2> {
    let lines: Vec<Line> = (0..3)
        .map(|k| {
            let angle = 2.0 * PI * k as f64 / 3.0;
            Line::new(Point2::ORIGIN, Point2::new(angle.cos(), angle.sin()))
                .expect("unit direction")
        })
        .collect();
    let mut out = Vec::with_capacity(steps + 1);
    let mut x = project_point(x0, &lines[0]);
    out.push(x);
    for k in 1..=steps {
        x = project_point(x, &lines[k % 3]);
        out.push(x);
    }
    out
}
