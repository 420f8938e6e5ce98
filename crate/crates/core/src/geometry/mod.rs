//! Planar geometry: points, lines, rigid motions, polygons and the Steiner
//! symmetrization itself.
//!
//! Coordinates are plain `f64`. Predicates use an absolute tolerance of
//! [`TOL`] scaled by the polygon diameter, so fixtures near unit scale see a
//! single tolerance regime.

mod hausdorff;
mod point;
mod polygon;
mod slice;
mod symmetrize;

pub use hausdorff::{
    directed_hausdorff, hausdorff_distance, hausdorff_distance_sampled, point_polygon_distance,
    DEFAULT_SAMPLES_PER_DIAMETER,
};
pub use point::{project_point, to_canonical, Line, Point2, Transform};
pub use polygon::Polygon;
pub use slice::{chord_length_function, PiecewiseLinear};
pub use symmetrize::{reflect, steiner_symmetrize};

/// Base geometric tolerance, relative to a unit-scale diameter.
pub const TOL: f64 = 1e-12;
