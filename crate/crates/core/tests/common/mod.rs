#![allow(dead_code)]

use std::f64::consts::PI;

use rand::Rng;
use steinersym::geometry::{hausdorff_distance, Line, Point2, Polygon};

/// Star-shaped polygon about the origin from sorted random angles.
pub fn random_star<R: Rng>(rng: &mut R, n: usize) -> Polygon {
    loop {
        let mut angles: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..2.0 * PI)).collect();
        angles.sort_by(f64::total_cmp);
        let v: Vec<Point2> = angles
            .iter()
            .map(|&a| {
                let r = rng.random_range(0.2..1.5);
                Point2::new(r * a.cos(), r * a.sin())
            })
            .collect();
        if let Ok(p) = Polygon::new(v) {
            if p.area() > 1e-3 {
                return p;
            }
        }
    }
}

/// Convex polygon: points on a random ellipse at sorted random angles.
pub fn random_convex<R: Rng>(rng: &mut R, n: usize) -> Polygon {
    loop {
        let (ax, ay) = (rng.random_range(0.3..2.0), rng.random_range(0.3..2.0));
        let rot = rng.random_range(0.0..PI);
        let c = Point2::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let mut angles: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..2.0 * PI)).collect();
        angles.sort_by(f64::total_cmp);
        let v: Vec<Point2> = angles
            .iter()
            .map(|&a| c + Point2::new(ax * a.cos(), ay * a.sin()).rotate(rot))
            .collect();
        if let Ok(p) = Polygon::new(v) {
            if p.is_convex() && p.area() > 1e-2 {
                return p;
            }
        }
    }
}

pub fn random_line<R: Rng>(rng: &mut R) -> Line {
    let a = rng.random_range(0.0..2.0 * PI);
    Line::new(
        Point2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
        Point2::new(a.cos(), a.sin()),
    )
    .expect("unit direction")
}

/// Random simple quadrilateral (convex or not).
pub fn random_quad<R: Rng>(rng: &mut R) -> Polygon {
    loop {
        let v: Vec<Point2> = (0..4)
            .map(|_| Point2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        if let Ok(p) = Polygon::new(v) {
            if p.area() > 0.05 && p.interior_angles().iter().all(|&a| a > 0.05) {
                return p;
            }
        }
    }
}

/// Random triangle of area about one.
pub fn random_triangle<R: Rng>(rng: &mut R) -> Polygon {
    loop {
        let v: Vec<Point2> = (0..3)
            .map(|_| Point2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        if let Ok(p) = Polygon::new(v) {
            if p.min_interior_angle() > 0.2 {
                return p.scaled(1.0 / p.area().sqrt());
            }
        }
    }
}

/// Same vertex set within `tol`, or failing that, Hausdorff-close.
pub fn same_set(a: &Polygon, b: &Polygon, tol: f64) -> bool {
    a.approx_eq_vertices(b, tol) || hausdorff_distance(a, b) <= tol
}
