use super::point::Point2;
use super::polygon::Polygon;

/// Boundary samples per diameter used when either input is non-convex.
pub const DEFAULT_SAMPLES_PER_DIAMETER: f64 = 2048.0;

/// Distance from `p` to the closed polygon (zero inside).
pub fn point_polygon_distance(p: Point2, polygon: &Polygon) -> f64 {
    if polygon.contains_open(p) {
        0.0
    } else {
        polygon.boundary_distance(p)
    }
}

/// `sup_{x ∈ a} d(x, b)`. Exact (a vertex maximum) when both inputs are
/// convex; otherwise sampled along the boundary of `a` with spacing `step`.
pub fn directed_hausdorff(a: &Polygon, b: &Polygon, step: f64) -> f64 {
    if a.is_convex() && b.is_convex() {
        return a
            .vertices()
            .iter()
            .map(|&v| point_polygon_distance(v, b))
            .fold(0.0, f64::max);
    }
    boundary_samples(a, step)
        .map(|p| point_polygon_distance(p, b))
        .fold(0.0, f64::max)
}

fn boundary_samples(p: &Polygon, step: f64) -> impl Iterator<Item = Point2> + '_ {
    p.edges().flat_map(move |(a, b)| {
        let k = ((a.distance(b) / step).ceil() as usize).max(1);
        (0..k).map(move |i| a + (b - a) * (i as f64 / k as f64))
    })
}

/// Hausdorff distance between the closures of two polygons.
///
/// Convex pairs are computed exactly. Otherwise boundaries are sampled with
/// spacing `max(diam) / 2048`, which under-reports by at most one spacing
/// whenever the supremum is attained on a boundary.
pub fn hausdorff_distance(a: &Polygon, b: &Polygon) -> f64 {
    let step = a.diameter().max(b.diameter()) / DEFAULT_SAMPLES_PER_DIAMETER;
    hausdorff_distance_sampled(a, b, step)
}

/// Hausdorff distance with an explicit sampling step for non-convex inputs.
pub fn hausdorff_distance_sampled(a: &Polygon, b: &Polygon, step: f64) -> f64 {
    assert!(step > 0.0, "sampling step must be positive");
    directed_hausdorff(a, b, step).max(directed_hausdorff(b, a, step))
}
