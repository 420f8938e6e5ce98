//! Steiner symmetrization of planar polygons, symmetrization schedules for
//! triangles and quadrilaterals, and Monte Carlo estimation of first exit
//! times for Brownian motion and symmetric α-stable processes.
//!
//! The crate is split into four layers:
//!
//! * [`geometry`]: polygons, lines, rigid motions, the slab-sweep
//!   symmetrizer and Hausdorff distances.
//! * [`schedules`]: finite and infinite symmetrization sequences that drive
//!   triangles to equilateral triangles and quadrilaterals to squares.
//! * [`stochastic`]: path samplers, skeleton exit estimators and closed-form
//!   survival oracles.
//! * [`verify`]: statistical checks that tie the previous layers together.

pub mod error;
pub mod geometry;
pub mod schedules;
pub mod stochastic;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{Line, PiecewiseLinear, Point2, Polygon, Transform};
pub use schedules::{RectParams, ScheduleState};
pub use stochastic::{ExitEstimate, SimParams, StableIndex};
pub use verify::VerifyReport;
