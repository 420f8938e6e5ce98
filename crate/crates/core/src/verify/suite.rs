use super::checks::{
    check_eigenvalue_ordering, check_polya_szego, check_sampler_calibration,
    check_schedule_convergence, check_symmetrization_monotonicity,
};
use super::VerifyReport;
use crate::error::Result;
use crate::geometry::{Line, Point2, Polygon};
use crate::schedules::{aligned_regular, ScheduleRegistry};
use crate::stochastic::{SimParams, StableIndex};

/// A runnable verification with its inputs bound.
pub trait Check: Send + Sync {
    fn name(&self) -> String;
    fn run(&self) -> Result<VerifyReport>;
}

pub struct MonotonicityCheck {
    pub polygon: Polygon,
    pub line: Line,
    pub x0: Point2,
    pub alpha: StableIndex,
    pub params: SimParams,
}

impl Check for MonotonicityCheck {
    fn name(&self) -> String {
        format!(
            "monotonicity alpha={} t={}",
            self.alpha.alpha(),
            self.params.t
        )
    }
    fn run(&self) -> Result<VerifyReport> {
        check_symmetrization_monotonicity(
            &self.polygon,
            &self.line,
            self.x0,
            self.alpha,
            self.params,
        )
    }
}

/// Runs a registered schedule and compares against the aligned regular
/// polygon of its final state.
pub struct ScheduleConvergenceCheck {
    pub schedule: String,
    pub polygon: Polygon,
    pub x0: Point2,
    pub steps: usize,
    pub alpha: StableIndex,
    pub params: SimParams,
}

impl Check for ScheduleConvergenceCheck {
    fn name(&self) -> String {
        format!(
            "schedule {} alpha={} t={}",
            self.schedule,
            self.alpha.alpha(),
            self.params.t
        )
    }
    fn run(&self) -> Result<VerifyReport> {
        let registry = ScheduleRegistry::default();
        let strategy = registry.get(&self.schedule).ok_or_else(|| {
            crate::Error::Unsupported(format!("unknown schedule {}", self.schedule))
        })?;
        let states = strategy.run(&self.polygon, self.x0, self.steps)?;
        let target = aligned_regular(&states.last().expect("non-empty").polygon)?;
        let mut r = check_schedule_convergence(&states, &target, self.alpha, self.params)?;
        r.name = self.name();
        Ok(r.with("schedule", &self.schedule))
    }
}

pub struct PolyaSzegoCheck {
    pub polygon: Polygon,
    pub alpha: StableIndex,
    pub params: SimParams,
    pub grid_resolution: usize,
    pub center_paths: usize,
}

impl Check for PolyaSzegoCheck {
    fn name(&self) -> String {
        format!(
            "polya-szego n={} alpha={} t={}",
            self.polygon.len(),
            self.alpha.alpha(),
            self.params.t
        )
    }
    fn run(&self) -> Result<VerifyReport> {
        check_polya_szego(
            self.polygon.len(),
            &self.polygon,
            self.alpha,
            self.params,
            self.grid_resolution,
            self.center_paths,
        )
    }
}

pub struct EigenOrderingCheck {
    pub polygon: Polygon,
    pub params: SimParams,
    pub t1: f64,
    pub t2: f64,
}

impl Check for EigenOrderingCheck {
    fn name(&self) -> String {
        format!("eigenvalue ordering n={}", self.polygon.len())
    }
    fn run(&self) -> Result<VerifyReport> {
        check_eigenvalue_ordering(
            self.polygon.len(),
            &self.polygon,
            self.params,
            self.t1,
            self.t2,
        )
    }
}

pub struct SamplerCalibrationCheck {
    pub alpha: StableIndex,
    pub params: SimParams,
}

impl Check for SamplerCalibrationCheck {
    fn name(&self) -> String {
        format!("sampler calibration alpha={}", self.alpha.alpha())
    }
    fn run(&self) -> Result<VerifyReport> {
        check_sampler_calibration(self.alpha, self.params)
    }
}

/// Ordered collection of checks.
#[derive(Default)]
pub struct CheckSuite {
    checks: Vec<Box<dyn Check>>,
}

impl CheckSuite {
    pub fn new() -> Self {
        CheckSuite::default()
    }

    pub fn push(&mut self, c: Box<dyn Check>) {
        self.checks.push(c);
    }

    pub fn names(&self) -> Vec<String> {
        self.checks.iter().map(|c| c.name()).collect()
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    /// Runs every check in order; errors become failed reports.
    pub fn run(&self, seed: u64) -> Vec<VerifyReport> {
        self.checks
            .iter()
            .map(|c| {
                c.run()
                    .unwrap_or_else(|e| VerifyReport::from_error(c.name(), seed, &e))
            })
            .collect()
    }

    /// Desk-scale suite covering every check type, seeded from `seed`.
    pub fn default_suite(seed: u64) -> Self {
        let brownian = StableIndex::BROWNIAN;
        let cauchy = StableIndex::new(1.0).expect("valid index");
        let scalene = Polygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.6, 0.0),
            Point2::new(0.4, 1.25),
        ])
        .expect("valid triangle");
        let right = Polygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
        ])
        .expect("valid triangle");
        let rect = Polygon::rectangle(-1.0, -0.5, 1.0, 0.5).expect("valid rectangle");
        let p345 = Polygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(4.0, 0.0),
            Point2::new(0.0, 3.0),
        ])
        .expect("valid triangle");
        let quad = Polygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.4, 0.1),
            Point2::new(1.1, 0.9),
            Point2::new(0.2, 0.7),
        ])
        .expect("valid quadrilateral");

        let mut s = CheckSuite::new();
        for (k, a) in [2.0, 1.5, 1.0, 0.5].into_iter().enumerate() {
            s.push(Box::new(SamplerCalibrationCheck {
                alpha: StableIndex::new(a).expect("valid index"),
                params: SimParams::new(1.0, 1, 200_000, seed.wrapping_add(10 + k as u64)),
            }));
        }
        let line = Line::mediator(scalene.vertex(0), scalene.vertex(1)).expect("distinct vertices");
        for (k, a) in [brownian, cauchy].into_iter().enumerate() {
            s.push(Box::new(MonotonicityCheck {
                polygon: scalene.clone(),
                line,
                x0: Point2::new(0.3, 0.3),
                alpha: a,
                params: SimParams::new(0.05, 64, 20_000, seed.wrapping_add(20 + k as u64)),
            }));
        }
        s.push(Box::new(ScheduleConvergenceCheck {
            schedule: "triangle-mediator".into(),
            polygon: right,
            x0: Point2::new(0.2, 0.2),
            steps: 30,
            alpha: brownian,
            params: SimParams::new(0.02, 32, 20_000, seed.wrapping_add(30)),
        }));
        s.push(Box::new(ScheduleConvergenceCheck {
            schedule: "rectangle-square".into(),
            polygon: rect,
            x0: Point2::new(0.3, 0.1),
            steps: 20,
            alpha: brownian,
            params: SimParams::new(0.1, 32, 20_000, seed.wrapping_add(31)),
        }));
        s.push(Box::new(PolyaSzegoCheck {
            polygon: p345,
            alpha: brownian,
            params: SimParams::new(0.3, 32, 2_000, seed.wrapping_add(40)),
            grid_resolution: 5,
            center_paths: 50_000,
        }));
        s.push(Box::new(PolyaSzegoCheck {
            polygon: quad,
            alpha: cauchy,
            params: SimParams::new(0.05, 32, 2_000, seed.wrapping_add(41)),
            grid_resolution: 5,
            center_paths: 50_000,
        }));
        s.push(Box::new(EigenOrderingCheck {
            polygon: scalene,
            params: SimParams::new(0.4, 100, 100_000, seed.wrapping_add(50)).with_bridge(true),
            t1: 0.2,
            t2: 0.4,
        }));
        s
    }
}
