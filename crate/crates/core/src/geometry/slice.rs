use serde::{Deserialize, Serialize};

use super::point::{to_canonical, Line, Point2};
use super::polygon::Polygon;
use super::TOL;

/// A nonnegative piecewise-linear function of one variable, zero outside its
/// support.
///
/// Knots are `(abscissa, value)` pairs with non-decreasing abscissae. An
/// abscissa may appear twice to encode a jump (left limit, then right limit);
/// slice-length functions jump wherever the polygon has an edge perpendicular
/// to the symmetrization axis. The first and last knots have value zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseLinear {
    knots: Vec<(f64, f64)>,
}

impl PiecewiseLinear {
    pub(crate) fn from_knots(knots: Vec<(f64, f64)>) -> Self {
        debug_assert!(knots.windows(2).all(|w| w[0].0 <= w[1].0));
        PiecewiseLinear { knots }
    }

    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    /// Support `[min, max]`.
    pub fn support(&self) -> (f64, f64) {
        (self.knots[0].0, self.knots[self.knots.len() - 1].0)
    }

    /// Value at `z`; at a jump the right limit is returned.
    pub fn eval(&self, z: f64) -> f64 {
        let k = &self.knots;
        if z < k[0].0 || z > k[k.len() - 1].0 {
            return 0.0;
        }
        // last knot with abscissa <= z
        let i = k.partition_point(|&(a, _)| a <= z) - 1;
        if i + 1 >= k.len() {
            return k[i].1;
        }
        let (z0, v0) = k[i];
        let (z1, v1) = k[i + 1];
        if z1 == z0 {
            return v1;
        }
        v0 + (v1 - v0) * (z - z0) / (z1 - z0)
    }

    pub fn integral(&self) -> f64 {
        self.knots
            .windows(2)
            .map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1))
            .sum()
    }
}

/// Slice lengths of a polygon already placed in canonical position, i.e. with
/// slices taken along horizontal lines `y = z`.
pub(crate) fn horizontal_chord_lengths(vertices: &[Point2]) -> PiecewiseLinear {
    let n = vertices.len();
    let mut diam: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            diam = diam.max(vertices[i].distance(vertices[j]));
        }
    }
    let tol = TOL * diam;

    // Snap vertex heights that agree within tolerance onto a common level so
    // that nearly perpendicular edges do not create sliver slabs.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| vertices[a].y.total_cmp(&vertices[b].y));
    let mut levels: Vec<f64> = Vec::new();
    let mut level_of = vec![0usize; n];
    let mut cluster: Vec<usize> = Vec::new();
    let flush = |cluster: &mut Vec<usize>, levels: &mut Vec<f64>, level_of: &mut Vec<usize>| {
        if cluster.is_empty() {
            return;
        }
        let mean = cluster.iter().map(|&i| vertices[i].y).sum::<f64>() / cluster.len() as f64;
        for &i in cluster.iter() {
            level_of[i] = levels.len();
        }
        levels.push(mean);
        cluster.clear();
    };
    for &i in &order {
        if let Some(&first) = cluster.first() {
            if vertices[i].y - vertices[first].y > tol {
                flush(&mut cluster, &mut levels, &mut level_of);
            }
        }
        cluster.push(i);
    }
    flush(&mut cluster, &mut levels, &mut level_of);

    let snapped: Vec<Point2> = (0..n)
        .map(|i| Point2::new(vertices[i].x, levels[level_of[i]]))
        .collect();

    // (bottom value, top value) of the slice length on each slab
    let slabs: Vec<(f64, f64)> = levels
        .windows(2)
        .enumerate()
        .map(|(k, w)| {
            let (lo, hi) = (w[0], w[1]);
            let mut crossing: Vec<(f64, f64, f64)> = Vec::new();
            for i in 0..n {
                let (la, lb) = (level_of[i], level_of[(i + 1) % n]);
                if la == lb || la.min(lb) > k || la.max(lb) < k + 1 {
                    continue;
                }
                let (a, b) = (snapped[i], snapped[(i + 1) % n]);
                let x_at = |z: f64| a.x + (z - a.y) / (b.y - a.y) * (b.x - a.x);
                crossing.push((x_at(0.5 * (lo + hi)), x_at(lo), x_at(hi)));
            }
            crossing.sort_by(|p, q| p.0.total_cmp(&q.0));
            debug_assert!(crossing.len().is_multiple_of(2));
            crossing.chunks_exact(2).fold((0.0, 0.0), |(b, t), pair| {
                (
                    b + (pair[1].1 - pair[0].1).max(0.0),
                    t + (pair[1].2 - pair[0].2).max(0.0),
                )
            })
        })
        .collect();

    let mut knots = Vec::with_capacity(2 * levels.len());
    for (k, &z) in levels.iter().enumerate() {
        let below = if k == 0 { 0.0 } else { slabs[k - 1].1 };
        let above = if k + 1 == levels.len() {
            0.0
        } else {
            slabs[k].0
        };
        if (below - above).abs() <= tol {
            knots.push((z, 0.5 * (below + above)));
        } else {
            knots.push((z, below));
            knots.push((z, above));
        }
    }
    PiecewiseLinear::from_knots(knots)
}

/// Slice-length function `z -> length(P ∩ slice(z))`.
///
/// Slices are perpendicular to `line`; `z` is the coordinate along the line
/// direction oriented as in [`to_canonical`] (for the y-axis, `z = y`).
pub fn chord_length_function(polygon: &Polygon, line: &Line) -> PiecewiseLinear {
    let t = to_canonical(line);
    let canon: Vec<Point2> = polygon.vertices().iter().map(|&p| t.apply(p)).collect();
    horizontal_chord_lengths(&canon)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centered_square_about_axis() {
        let sq = Polygon::rectangle(-0.5, -0.5, 0.5, 0.5).unwrap();
        let f = chord_length_function(&sq, &Line::y_axis());
        assert_eq!(f.support(), (-0.5, 0.5));
        for z in [-0.49, -0.2, 0.0, 0.3, 0.49] {
            assert!((f.eval(z) - 1.0).abs() < 1e-15);
        }
        assert_eq!(f.eval(0.6), 0.0);
        assert_eq!(f.knots().first().unwrap().1, 0.0);
        assert_eq!(f.knots().last().unwrap().1, 0.0);
    }

    #[test]
    fn right_triangle_slices() {
        let t = Polygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
        ])
        .unwrap();
        let f = chord_length_function(&t, &Line::y_axis());
        for z in [0.0001, 0.25, 0.5, 0.9] {
            assert!((f.eval(z) - (1.0 - z)).abs() < 1e-14, "z = {z}");
        }
        assert!((f.integral() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn nonconvex_slices_add_up() {
        // U shape: two prongs of width 1 above a base of width 3
        let u = Polygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(3.0, 0.0),
            Point2::new(3.0, 2.0),
            Point2::new(2.0, 2.0),
            Point2::new(2.0, 1.0),
            Point2::new(1.0, 1.0),
            Point2::new(1.0, 2.0),
            Point2::new(0.0, 2.0),
        ])
        .unwrap();
        let f = chord_length_function(&u, &Line::y_axis());
        assert!((f.eval(0.5) - 3.0).abs() < 1e-14);
        assert!((f.eval(1.5) - 2.0).abs() < 1e-14);
        assert!((f.integral() - u.area()).abs() < 1e-13);
    }

    #[test]
    fn slices_along_tilted_line_integrate_to_area() {
        let p = Polygon::new(vec![
            Point2::new(0.1, -0.3),
            Point2::new(1.2, 0.1),
            Point2::new(0.9, 0.8),
            Point2::new(0.4, 0.5),
            Point2::new(-0.2, 0.9),
        ])
        .unwrap();
        let l = Line::new(Point2::new(0.3, 0.2), Point2::new(0.6, -0.8)).unwrap();
        let f = chord_length_function(&p, &l);
        assert!((f.integral() - p.area()).abs() < 1e-12 * p.area());
    }
}
