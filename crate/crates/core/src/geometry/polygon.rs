use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::point::{Point2, Transform};
use super::TOL;
use crate::error::{Error, Result};

/// A simple polygon stored as a counterclockwise vertex loop.
///
/// The closing edge from the last vertex back to the first is implicit.
/// JSON form: `{"vertices": [[x, y], ...]}`; clockwise input is accepted and
/// reversed on load.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolygonRepr", into = "PolygonRepr")]
pub struct Polygon {
    vertices: Vec<Point2>,
}

#[derive(Serialize, Deserialize)]
struct PolygonRepr {
    vertices: Vec<Point2>,
}

impl TryFrom<PolygonRepr> for Polygon {
    type Error = Error;
    fn try_from(r: PolygonRepr) -> Result<Self> {
        Polygon::new(r.vertices)
    }
}

impl From<Polygon> for PolygonRepr {
    fn from(p: Polygon) -> Self {
        PolygonRepr {
            vertices: p.vertices,
        }
    }
}

fn signed_area(v: &[Point2]) -> f64 {
    let n = v.len();
    let mut s = 0.0;
    for i in 0..n {
        s += v[i].cross(v[(i + 1) % n]);
    }
    0.5 * s
}

fn max_pair_distance(v: &[Point2]) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            d = d.max(v[i].distance(v[j]));
        }
    }
    d
}

pub(crate) fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.distance(a);
    }
    let s = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a + ab * s)
}

fn segments_distance(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> f64 {
    let d1 = (p2 - p1).cross(q1 - p1);
    let d2 = (p2 - p1).cross(q2 - p1);
    let d3 = (q2 - q1).cross(p1 - q1);
    let d4 = (q2 - q1).cross(p2 - q1);
    if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
        return 0.0;
    }
    point_segment_distance(p1, q1, q2)
        .min(point_segment_distance(p2, q1, q2))
        .min(point_segment_distance(q1, p1, p2))
        .min(point_segment_distance(q2, p1, p2))
}

/// Simplicity test on a raw vertex loop (either orientation).
fn loop_is_simple(v: &[Point2]) -> bool {
    let n = v.len();
    if n < 3 || v.iter().any(|p| !p.is_finite()) {
        return false;
    }
    let diam = max_pair_distance(v);
    let tol = TOL * diam.max(f64::MIN_POSITIVE);
    if diam == 0.0 || signed_area(v).abs() <= tol * diam {
        return false;
    }
    for i in 0..n {
        let a = v[i];
        let b = v[(i + 1) % n];
        let c = v[(i + 2) % n];
        if a.distance(b) <= tol {
            return false;
        }
        // adjacent edges folding back onto each other
        let (e1, e2) = (b - a, c - b);
        if e1.cross(e2).abs() <= tol * e1.norm().max(e2.norm()) && e1.dot(e2) < 0.0 {
            return false;
        }
    }
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let d = segments_distance(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]);
            if d <= tol {
                return false;
            }
        }
    }
    true
}

impl Polygon {
    /// Validates and orients a vertex loop.
    pub fn new(mut vertices: Vec<Point2>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidPolygon(format!(
                "need at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if !loop_is_simple(&vertices) {
            return Err(Error::InvalidPolygon("vertex loop is not simple".into()));
        }
        if signed_area(&vertices) < 0.0 {
            vertices.reverse();
        }
        Ok(Polygon { vertices })
    }

    /// Trusted constructor for loops already known to be simple and CCW.
    pub(crate) fn from_ccw_unchecked(vertices: Vec<Point2>) -> Self {
        debug_assert!(vertices.len() >= 3);
        Polygon { vertices }
    }

    /// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
    pub fn rectangle(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        Polygon::new(vec![
            Point2::new(x0, y0),
            Point2::new(x1, y0),
            Point2::new(x1, y1),
            Point2::new(x0, y1),
        ])
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i % self.vertices.len()]
    }

    /// Edges `(v[i], v[i+1])`, including the closing edge.
    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn diameter(&self) -> f64 {
        max_pair_distance(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| a.distance(b)).sum()
    }

    /// Area centroid.
    pub fn centroid(&self) -> Point2 {
        let mut cx = 0.0;
        let mut cy = 0.0;
        for (a, b) in self.edges() {
            let w = a.cross(b);
            cx += (a.x + b.x) * w;
            cy += (a.y + b.y) * w;
        }
        let k = 1.0 / (6.0 * self.area());
        Point2::new(cx * k, cy * k)
    }

    /// Interior angles in radians, one per vertex (reflex angles exceed π).
    pub fn interior_angles(&self) -> Vec<f64> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let prev = self.vertices[(i + n - 1) % n];
                let cur = self.vertices[i];
                let next = self.vertices[(i + 1) % n];
                let (e1, e2) = (cur - prev, next - cur);
                PI - e1.cross(e2).atan2(e1.dot(e2))
            })
            .collect()
    }

    pub fn min_interior_angle(&self) -> f64 {
        self.interior_angles()
            .into_iter()
            .fold(f64::INFINITY, f64::min)
    }

    pub fn is_simple(&self) -> bool {
        loop_is_simple(&self.vertices)
    }

    pub fn is_convex(&self) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            let prev = self.vertices[(i + n - 1) % n];
            let cur = self.vertices[i];
            let next = self.vertices[(i + 1) % n];
            let (e1, e2) = (cur - prev, next - cur);
            e1.cross(e2) >= -TOL * e1.norm() * e2.norm()
        })
    }

    /// Closed-set membership; boundary points (within tolerance) count as inside.
    pub fn contains(&self, p: Point2) -> bool {
        let tol = TOL * self.diameter();
        if self.boundary_distance(p) <= tol {
            return true;
        }
        self.contains_open(p)
    }

    /// Crossing-number test without boundary handling.
    pub(crate) fn contains_open(&self, p: Point2) -> bool {
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if x > p.x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Distance from `p` to the polygon boundary.
    pub fn boundary_distance(&self, p: Point2) -> f64 {
        self.edges()
            .map(|(a, b)| point_segment_distance(p, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    /// Minimum width: smallest over edges of the farthest vertex distance from
    /// that edge's supporting line. For a triangle this is the smallest altitude.
    pub fn min_width(&self) -> f64 {
        self.edges()
            .map(|(a, b)| {
                let u = (b - a) * (1.0 / a.distance(b));
                self.vertices
                    .iter()
                    .map(|&v| (v - a).cross(u).abs())
                    .fold(0.0, f64::max)
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Interior-cone radius `¼ min(smallest angle, smallest vertex-to-opposite-side distance)`.
    pub fn epsilon_cone_radius(&self) -> Result<f64> {
        if !self.is_convex() {
            return Err(Error::Unsupported(
                "epsilon cone radius needs a convex polygon".into(),
            ));
        }
        Ok(0.25 * self.min_interior_angle().min(self.min_width()))
    }

    pub fn transformed(&self, t: &Transform) -> Polygon {
        Polygon::from_ccw_unchecked(self.vertices.iter().map(|&p| t.apply(p)).collect())
    }

    pub fn translated(&self, d: Point2) -> Polygon {
        Polygon::from_ccw_unchecked(self.vertices.iter().map(|&p| p + d).collect())
    }

    /// Uniform scaling about the origin.
    pub fn scaled(&self, s: f64) -> Polygon {
        assert!(s > 0.0);
        Polygon::from_ccw_unchecked(self.vertices.iter().map(|&p| p * s).collect())
    }

    /// Same loop starting at vertex `k`.
    pub fn rotated_start(&self, k: usize) -> Polygon {
        let n = self.vertices.len();
        Polygon::from_ccw_unchecked((0..n).map(|i| self.vertices[(i + k) % n]).collect())
    }

    /// Vertex-set equality up to `tol`, ignoring the starting vertex.
    pub fn approx_eq_vertices(&self, other: &Polygon, tol: f64) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mut used = vec![false; other.len()];
        for &p in &self.vertices {
            let hit = other
                .vertices
                .iter()
                .enumerate()
                .filter(|(j, _)| !used[*j])
                .map(|(j, &q)| (j, p.distance(q)))
                .min_by(|a, b| a.1.total_cmp(&b.1));
            match hit {
                Some((j, d)) if d <= tol => used[j] = true,
                _ => return false,
            }
        }
        true
    }

    /// Largest displacement between matched vertices over the best cyclic
    /// alignment, or `None` if the vertex counts differ.
    pub fn max_vertex_offset(&self, other: &Polygon) -> Option<f64> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        (0..n)
            .map(|k| {
                (0..n)
                    .map(|i| self.vertices[i].distance(other.vertices[(i + k) % n]))
                    .fold(0.0, f64::max)
            })
            .min_by(|a, b| a.total_cmp(b))
    }
}
