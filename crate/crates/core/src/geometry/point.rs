use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point (or displacement) in the plane.
///
/// Serialized as a two-element array `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3-D cross product.
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    /// Counterclockwise quarter turn.
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    pub fn rotate(self, angle: f64) -> Point2 {
        let (s, c) = angle.sin_cos();
        Point2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn midpoint(self, other: Point2) -> Point2 {
        Point2::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<[f64; 2]> for Point2 {
    fn from(a: [f64; 2]) -> Self {
        Point2::new(a[0], a[1])
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// An oriented line `anchor + s * direction`, `|direction| = 1`.
///
/// This is the axis of a planar Steiner symmetrization: slices are taken
/// perpendicular to it and recentred on it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LineRepr", into = "LineRepr")]
pub struct Line {
    anchor: Point2,
    direction: Point2,
}

#[derive(Serialize, Deserialize)]
struct LineRepr {
    anchor: Point2,
    direction: Point2,
}

impl TryFrom<LineRepr> for Line {
    type Error = Error;
    fn try_from(r: LineRepr) -> Result<Self> {
        Line::new(r.anchor, r.direction)
    }
}

impl From<Line> for LineRepr {
    fn from(l: Line) -> Self {
        LineRepr {
            anchor: l.anchor,
            direction: l.direction,
        }
    }
}

impl Line {
    /// Builds a line, normalizing `direction`.
    pub fn new(anchor: Point2, direction: Point2) -> Result<Self> {
        if !anchor.is_finite() || !direction.is_finite() {
            return Err(Error::InvalidLine("non-finite coordinates".into()));
        }
        let n = direction.norm();
        if n == 0.0 {
            return Err(Error::InvalidLine("zero direction".into()));
        }
        Ok(Line {
            anchor,
            direction: direction * (1.0 / n),
        })
    }

    pub fn through(a: Point2, b: Point2) -> Result<Self> {
        Line::new(a, b - a)
    }

    /// The vertical axis `{x = 0}`, directed upwards.
    pub fn y_axis() -> Self {
        Line {
            anchor: Point2::ORIGIN,
            direction: Point2::new(0.0, 1.0),
        }
    }

    pub fn x_axis() -> Self {
        Line {
            anchor: Point2::ORIGIN,
            direction: Point2::new(1.0, 0.0),
        }
    }

    /// Perpendicular bisector of the segment `ab`.
    pub fn mediator(a: Point2, b: Point2) -> Result<Self> {
        Line::new(a.midpoint(b), (b - a).perp())
    }

    pub fn anchor(&self) -> Point2 {
        self.anchor
    }

    pub fn direction(&self) -> Point2 {
        self.direction
    }

    /// Unit normal, a counterclockwise quarter turn of the direction.
    pub fn normal(&self) -> Point2 {
        self.direction.perp()
    }

    /// Signed distance from the line, positive on the normal side.
    pub fn signed_distance(&self, p: Point2) -> f64 {
        (p - self.anchor).dot(self.normal())
    }

    pub fn point_at(&self, s: f64) -> Point2 {
        self.anchor + self.direction * s
    }

    /// Image of the line under a rigid motion.
    pub fn transformed(&self, t: &Transform) -> Line {
        Line {
            anchor: t.apply(self.anchor),
            direction: self.direction.rotate(t.angle),
        }
    }
}

/// Foot of the perpendicular from `p` to `line`.
pub fn project_point(p: Point2, line: &Line) -> Point2 {
    line.point_at((p - line.anchor).dot(line.direction))
}

/// A proper rigid motion `p -> R(angle) p + translation`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Transform {
    pub angle: f64,
    pub translation: Point2,
}

impl Transform {
    pub const IDENTITY: Transform = Transform {
        angle: 0.0,
        translation: Point2::ORIGIN,
    };

    pub fn new(angle: f64, translation: Point2) -> Self {
        Transform { angle, translation }
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        p.rotate(self.angle) + self.translation
    }

    pub fn inverse(&self) -> Transform {
        Transform {
            angle: -self.angle,
            translation: -self.translation.rotate(-self.angle),
        }
    }

    /// `self.then(other)` applies `self` first.
    pub fn then(&self, other: &Transform) -> Transform {
        Transform {
            angle: self.angle + other.angle,
            translation: other.apply(self.translation),
        }
    }
}

/// Rigid motion taking `line` onto the vertical axis `{x = 0}`.
///
/// The rotation angle is chosen in `(-π/2, π/2]`, sending either the line
/// direction or its opposite to `(0, 1)`. The y-axis therefore maps by the
/// identity and the x-axis by a rotation of `+π/2`. Only the first coordinate
/// is translated, so points of the line keep their coordinate along it.
pub fn to_canonical(line: &Line) -> Transform {
    let d = line.direction();
    let mut angle = std::f64::consts::FRAC_PI_2 - d.y.atan2(d.x);
    // wrap into (-π/2, π/2]
    while angle > std::f64::consts::FRAC_PI_2 {
        angle -= std::f64::consts::PI;
    }
    while angle <= -std::f64::consts::FRAC_PI_2 {
        angle += std::f64::consts::PI;
    }
    if angle.abs() < 1e-300 {
        angle = 0.0;
    }
    let a = line.anchor().rotate(angle);
    Transform {
        angle,
        translation: Point2::new(-a.x, 0.0),
    }
}
