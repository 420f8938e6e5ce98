use std::collections::BTreeMap;

use super::quad::quad_to_rectangle;
use super::rect::{rect_to_square_schedule, rectangle_frame};
use super::triangle::triangle_schedule;
use super::ScheduleState;
use crate::error::{Error, Result};
use crate::geometry::{project_point, steiner_symmetrize, Line, Point2, Polygon};

/// A named symmetrization schedule.
pub trait Schedule: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    /// Runs the schedule from `polygon` tracking `x0`. The meaning of `steps`
    /// depends on the strategy.
    fn run(&self, polygon: &Polygon, x0: Point2, steps: usize) -> Result<Vec<ScheduleState>>;
}

/// Cyclic mediators of the three sides; `steps` symmetrizations.
#[derive(Debug, Default, Clone, Copy)]
pub struct TriangleMediators;

/// At most three symmetrizations turning a quadrilateral into a rectangle;
/// `steps` is ignored.
#[derive(Debug, Default, Clone, Copy)]
pub struct QuadToRectangle;

/// Rectangle-to-square stages, two symmetrizations each; `steps` stages.
#[derive(Debug, Default, Clone, Copy)]
pub struct RectangleToSquare;

/// [`QuadToRectangle`] followed by [`RectangleToSquare`].
#[derive(Debug, Default, Clone, Copy)]
pub struct QuadToSquare;

impl Schedule for TriangleMediators {
    fn name(&self) -> &'static str {
        "triangle-mediator"
    }
    fn description(&self) -> &'static str {
        "triangle to equilateral via mediators of sides 0, 1, 2 in turn"
    }
    fn run(&self, polygon: &Polygon, x0: Point2, steps: usize) -> Result<Vec<ScheduleState>> {
        triangle_schedule(polygon, x0, steps)
    }
}

impl Schedule for QuadToRectangle {
    fn name(&self) -> &'static str {
        "quad-rectangle"
    }
    fn description(&self) -> &'static str {
        "quadrilateral to rectangle in at most three symmetrizations"
    }
    fn run(&self, polygon: &Polygon, x0: Point2, _steps: usize) -> Result<Vec<ScheduleState>> {
        quad_to_rectangle(polygon, x0)
    }
}

impl Schedule for RectangleToSquare {
    fn name(&self) -> &'static str {
        "rectangle-square"
    }
    fn description(&self) -> &'static str {
        "rectangle to square, alternating diagonal and side perpendiculars"
    }
    fn run(&self, polygon: &Polygon, x0: Point2, steps: usize) -> Result<Vec<ScheduleState>> {
        rectangle_to_square(ScheduleState::initial(polygon.clone(), x0), steps)
    }
}

impl Schedule for QuadToSquare {
    fn name(&self) -> &'static str {
        "quad-square"
    }
    fn description(&self) -> &'static str {
        "quadrilateral to rectangle, then rectangle to square"
    }
    fn run(&self, polygon: &Polygon, x0: Point2, steps: usize) -> Result<Vec<ScheduleState>> {
        let mut states = quad_to_rectangle(polygon, x0)?;
        let last = states.last().expect("non-empty").clone();
        states.extend(rectangle_to_square(last, steps)?.into_iter().skip(1));
        Ok(states)
    }
}

/// Continues `start` (a rectangle anywhere in the plane) through `stages`
/// rectangle-to-square stages. If the tracked point is off-centre it is first
/// moved to the centre by symmetrizing about both axes of the rectangle.
fn rectangle_to_square(start: ScheduleState, stages: usize) -> Result<Vec<ScheduleState>> {
    let frame = rectangle_frame(&start.polygon)
        .ok_or_else(|| Error::Unsupported("schedule requires a rectangle".into()))?;
    let mut states = vec![start.clone()];
    let tol = 1e-12 * start.polygon.diameter();
    if start.tracked.distance(frame.center) > tol {
        let mut tracked = start.tracked;
        for axis in [frame.e1, frame.e2] {
            let line = Line::new(frame.center, axis.perp())?;
            tracked = project_point(tracked, &line);
            let prev = &states.last().expect("non-empty").polygon;
            states.push(ScheduleState {
                step: start.step + states.len(),
                polygon: steiner_symmetrize(prev, &line)?.rotated_start(0),
                tracked,
                last_line: Some(line),
            });
        }
        // axis symmetrizations leave the rectangle itself fixed
        for s in states.iter_mut().skip(1) {
            s.polygon = start.polygon.clone();
        }
    }
    let to_world = frame.to_local_transform().inverse();
    let base = states.last().expect("non-empty").step;
    for s in rect_to_square_schedule(frame.params, stages)?
        .into_iter()
        .skip(1)
    {
        states.push(ScheduleState {
            step: base + s.step,
            polygon: s.polygon.transformed(&to_world),
            tracked: to_world.apply(s.tracked),
            last_line: s.last_line.map(|l| l.transformed(&to_world)),
        });
    }
    Ok(states)
}

/// Strategies keyed by name.
pub struct ScheduleRegistry {
    entries: BTreeMap<&'static str, Box<dyn Schedule>>,
}

impl Default for ScheduleRegistry {
    fn default() -> Self {
        let mut r = ScheduleRegistry::empty();
        r.register(Box::new(TriangleMediators));
        r.register(Box::new(QuadToRectangle));
        r.register(Box::new(RectangleToSquare));
        r.register(Box::new(QuadToSquare));
        r
    }
}

impl ScheduleRegistry {
    pub fn empty() -> Self {
        ScheduleRegistry {
            entries: BTreeMap::new(),
        }
    }

    /// Adds a strategy, replacing any with the same name.
    pub fn register(&mut self, s: Box<dyn Schedule>) {
        self.entries.insert(s.name(), s);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Schedule> {
        self.entries.get(name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_registry_lists_all() {
        let r = ScheduleRegistry::default();
        assert_eq!(
            r.names(),
            vec![
                "quad-rectangle",
                "quad-square",
                "rectangle-square",
                "triangle-mediator"
            ]
        );
        assert!(r.get("nope").is_none());
    }

    #[test]
    fn rectangle_square_in_world_frame() {
        let p = Polygon::rectangle(1.0, 1.0, 5.0, 3.0).unwrap();
        let s = RectangleToSquare
            .run(&p, Point2::new(1.5, 2.5), 12)
            .unwrap();
        assert_eq!(s.len(), 1 + 2 + 24);
        assert!(s[2].tracked.distance(Point2::new(3.0, 2.0)) < 1e-12);
        let f = rectangle_frame(&s.last().unwrap().polygon).unwrap();
        assert!((f.params.aspect() - 1.0).abs() < 1e-9);
        assert!(f.center.distance(Point2::new(3.0, 2.0)) < 1e-12);
        assert!((s.last().unwrap().polygon.area() - 8.0).abs() < 1e-9);
        for (i, st) in s.iter().enumerate() {
            assert_eq!(st.step, i);
            assert!(st.polygon.contains(st.tracked));
        }
    }

    #[test]
    fn quad_square_chains() {
        let q = Polygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(3.0, 0.2),
            Point2::new(2.5, 2.0),
            Point2::new(0.4, 1.5),
        ])
        .unwrap();
        let s = QuadToSquare.run(&q, Point2::new(1.0, 0.5), 10).unwrap();
        let f = rectangle_frame(&s.last().unwrap().polygon).unwrap();
        assert!((f.params.aspect() - 1.0).abs() < 1e-6);
        assert!((s.last().unwrap().polygon.area() - q.area()).abs() < 1e-9 * q.area());
        assert!(s.last().unwrap().tracked.distance(f.center) < 1e-9);
    }

    #[test]
    fn rejects_non_rectangle() {
        let t = Polygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap();
        assert!(RectangleToSquare.run(&t, Point2::ORIGIN, 1).is_err());
    }
}
