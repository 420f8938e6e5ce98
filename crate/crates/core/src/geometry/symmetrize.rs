use super::point::{project_point, to_canonical, Line, Point2};
use super::polygon::Polygon;
use super::slice::horizontal_chord_lengths;
use super::TOL;
use crate::error::{Error, Result};

/// Drops consecutive duplicates and vertices lying on the segment joining
/// their neighbours, cyclically.
fn simplify_loop(mut v: Vec<Point2>, tol: f64) -> Vec<Point2> {
    loop {
        let n = v.len();
        if n < 3 {
            return v;
        }
        let mut removed = false;
        let mut out: Vec<Point2> = Vec::with_capacity(n);
        for (i, &p) in v.iter().enumerate() {
            if out.last().is_some_and(|q: &Point2| q.distance(p) <= tol) {
                removed = true;
                continue;
            }
            if i == n - 1 && out.first().is_some_and(|q| q.distance(p) <= tol) {
                removed = true;
                continue;
            }
            out.push(p);
        }
        let n = out.len();
        if n >= 3 {
            let mut keep = vec![true; n];
            for i in 0..n {
                let prev = out[(i + n - 1) % n];
                let next = out[(i + 1) % n];
                let cur = out[i];
                let base = next - prev;
                let len = base.norm();
                if len == 0.0 {
                    continue;
                }
                let off = base.cross(cur - prev).abs() / len;
                let along = (cur - prev).dot(base);
                if off <= tol && along >= 0.0 && along <= len * len {
                    keep[i] = false;
                    removed = true;
                    // one removal per pass keeps neighbour tests valid
                    break;
                }
            }
            out = out
                .into_iter()
                .zip(keep)
                .filter(|(_, k)| *k)
                .map(|(p, _)| p)
                .collect();
        }
        v = out;
        if !removed {
            return v;
        }
    }
}

/// Steiner symmetrization of `polygon` about `line`.
///
/// Each slice perpendicular to `line` is replaced by the interval of the same
/// total length centred on `line`. Non-convex input is handled by a slab sweep
/// over the vertex projections; output vertices that are collinear within
/// tolerance are merged.
pub fn steiner_symmetrize(polygon: &Polygon, line: &Line) -> Result<Polygon> {
    let to = to_canonical(line);
    let back = to.inverse();
    let canon: Vec<Point2> = polygon.vertices().iter().map(|&p| to.apply(p)).collect();
    let chords = horizontal_chord_lengths(&canon);
    let knots = chords.knots();

    let mut loop_pts: Vec<Point2> = Vec::with_capacity(2 * knots.len());
    loop_pts.extend(knots.iter().map(|&(z, len)| Point2::new(0.5 * len, z)));
    loop_pts.extend(
        knots
            .iter()
            .rev()
            .map(|&(z, len)| Point2::new(-0.5 * len, z)),
    );

    let diam = polygon.diameter();
    let tol = TOL * diam;
    let simplified = simplify_loop(loop_pts, tol);
    if simplified.len() < 3 {
        return Err(Error::DegeneratePolygon);
    }
    let out = Polygon::from_ccw_unchecked(simplified.into_iter().map(|p| back.apply(p)).collect());
    if out.area() <= tol * diam {
        return Err(Error::DegeneratePolygon);
    }
    Ok(out)
}

/// Mirror image of `polygon` across `line`, reoriented counterclockwise.
pub fn reflect(polygon: &Polygon, line: &Line) -> Polygon {
    let mut v: Vec<Point2> = polygon
        .vertices()
        .iter()
        .map(|&p| project_point(p, line) * 2.0 - p)
        .collect();
    v.reverse();
    Polygon::from_ccw_unchecked(v)
}
