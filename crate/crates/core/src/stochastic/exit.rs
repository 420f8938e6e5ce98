use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sampler::{gaussian_step, subordinator_unchecked};
use super::{ExitEstimate, SimParams, StableIndex, CHUNK_SIZE};
use crate::error::{Error, Result};
use crate::geometry::{Point2, Polygon};

// Exponents beyond this make the bridge factor 1 to double precision.
const BRIDGE_CUTOFF: f64 = 40.0;

struct Domain<'a> {
    polygon: &'a Polygon,
    // inward unit normal and offset: n·p - c is the signed distance to the edge line
    edges: Vec<(Point2, f64)>,
    convex: bool,
}

impl<'a> Domain<'a> {
    fn new(polygon: &'a Polygon) -> Self {
        let edges = polygon
            .edges()
            .map(|(a, b)| {
                let d = b - a;
                let n = Point2::new(-d.y, d.x) * (1.0 / d.norm());
                (n, n.dot(a))
            })
            .collect();
        Domain {
            polygon,
            edges,
            convex: polygon.is_convex(),
        }
    }

    #[inline]
    fn inside(&self, p: Point2) -> bool {
        if self.convex {
            self.edges.iter().all(|&(n, c)| n.dot(p) >= c)
        } else {
            self.polygon.contains_open(p)
        }
    }

    #[inline]
    fn bridge_factor(&self, p: Point2, q: Point2, dt: f64) -> f64 {
        let mut w = 1.0;
        for &(n, c) in &self.edges {
            let e = 2.0 * (n.dot(p) - c) * (n.dot(q) - c) / dt;
            if e < BRIDGE_CUTOFF {
                w *= (1.0 - (-e).exp()).clamp(0.0, 1.0);
            }
        }
        w
    }
}

/// Per-horizon weight sums over a batch of paths.
#[derive(Debug, Clone)]
struct Moments {
    n: usize,
    sum: Vec<f64>,
    sum_sq: Vec<f64>,
    // row-major products w_h w_k, empty unless requested
    cross: Vec<f64>,
}

impl Moments {
    fn zeros(k: usize, cross: bool) -> Self {
        Moments {
            n: 0,
            sum: vec![0.0; k],
            sum_sq: vec![0.0; k],
            cross: vec![0.0; if cross { k * k } else { 0 }],
        }
    }

    fn merge(&mut self, o: &Moments) {
        self.n += o.n;
        for (a, b) in self.sum.iter_mut().zip(&o.sum) {
            *a += b;
        }
        for (a, b) in self.sum_sq.iter_mut().zip(&o.sum_sq) {
            *a += b;
        }
        for (a, b) in self.cross.iter_mut().zip(&o.cross) {
            *a += b;
        }
    }

    fn mean(&self, h: usize) -> f64 {
        self.sum[h] / self.n as f64
    }

    // variance of the per-path weight (population form)
    fn var(&self, h: usize) -> f64 {
        let p = self.mean(h);
        (self.sum_sq[h] / self.n as f64 - p * p).max(0.0)
    }

    fn cov(&self, h: usize, k: usize) -> f64 {
        let len = self.sum.len();
        self.cross[h * len + k] / self.n as f64 - self.mean(h) * self.mean(k)
    }
}

struct Run<'a> {
    domain: Domain<'a>,
    x0: Point2,
    idx: StableIndex,
    dt: f64,
    // grid indices of the horizons, strictly increasing, last = total steps
    checkpoints: Vec<usize>,
    bridge: bool,
    cross: bool,
}

impl Run<'_> {
    fn chunk(&self, chunk: usize, len: usize, seed: u64) -> Moments {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk as u64);
        let k = self.checkpoints.len();
        let total = *self.checkpoints.last().expect("non-empty");
        let mut acc = Moments::zeros(k, self.cross);
        let mut w_at = vec![0.0; k];
        let beta = 0.5 * self.idx.alpha();
        let brownian = self.idx.is_brownian();
        for _ in 0..len {
            let mut p = self.x0;
            let mut w = 1.0;
            let mut next = 0;
            w_at.iter_mut().for_each(|x| *x = 0.0);
            for j in 1..=total {
                let step = if brownian {
                    gaussian_step(self.dt, &mut rng)
                } else {
                    let s = subordinator_unchecked(self.dt, beta, &mut rng);
                    gaussian_step(2.0 * s, &mut rng)
                };
                let q = p + step;
                if !self.domain.inside(q) {
                    break;
                }
                if self.bridge {
                    w *= self.domain.bridge_factor(p, q, self.dt);
                }
                p = q;
                if j == self.checkpoints[next] {
                    w_at[next] = w;
                    next += 1;
                }
            }
            acc.n += 1;
            for (h, &w) in w_at[..next].iter().enumerate() {
                acc.sum[h] += w;
                acc.sum_sq[h] += w * w;
            }
            if self.cross {
                for h in 0..next {
                    for g in 0..next {
                        acc.cross[h * k + g] += w_at[h] * w_at[g];
                    }
                }
            }
        }
        acc
    }

    fn simulate(&self, n: usize, seed: u64) -> Moments {
        let chunks = n.div_ceil(CHUNK_SIZE);
        let parts: Vec<Moments> = (0..chunks)
            .into_par_iter()
            .map(|c| self.chunk(c, CHUNK_SIZE.min(n - c * CHUNK_SIZE), seed))
            .collect();
        let mut total = Moments::zeros(self.checkpoints.len(), self.cross);
        for part in &parts {
            total.merge(part);
        }
        total
    }
}

fn validate_start(d: &Polygon, x0: Point2) -> Result<()> {
    if !x0.is_finite() {
        return Err(Error::Domain("starting point must be finite".into()));
    }
    if !d.is_simple() {
        return Err(Error::InvalidPolygon("polygon is not simple".into()));
    }
    Ok(())
}

// Grid step and checkpoint indices for ascending horizons; the last horizon
// sits exactly on step `m`.
fn snap_horizons(t_list: &[f64], m: usize) -> Result<(f64, Vec<usize>)> {
    let t_max = *t_list
        .last()
        .ok_or_else(|| Error::Domain("empty horizon list".into()))?;
    if t_list.iter().any(|t| !t.is_finite() || *t <= 0.0) {
        return Err(Error::Domain("horizons must be positive and finite".into()));
    }
    if t_list.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Domain("horizons must be sorted ascending".into()));
    }
    let dt = t_max / m as f64;
    let mut idx: Vec<usize> = t_list
        .iter()
        .map(|&t| ((t / dt - 1e-9).ceil() as usize).clamp(1, m))
        .collect();
    *idx.last_mut().expect("non-empty") = m;
    Ok((dt, idx))
}

fn record(
    m: &Moments,
    h: usize,
    steps: usize,
    dt: f64,
    idx: StableIndex,
    p: &SimParams,
    bridge: bool,
) -> ExitEstimate {
    ExitEstimate {
        p_hat: m.mean(h).clamp(0.0, 1.0),
        std_err: (m.var(h) / m.n as f64).sqrt(),
        n: m.n,
        m: steps,
        t: steps as f64 * dt,
        alpha: idx.alpha(),
        seed: p.seed,
        bridge,
    }
}

fn run_curve(
    d: &Polygon,
    x0: Point2,
    idx: StableIndex,
    params: &SimParams,
    t_list: &[f64],
    cross: bool,
) -> Result<(Vec<usize>, f64, bool, Moments)> {
    params.validate()?;
    validate_start(d, x0)?;
    let (dt, checkpoints) = snap_horizons(t_list, params.m)?;
    let bridge = params.bridge_correction && idx.is_brownian();
    if bridge && !d.is_convex() {
        return Err(Error::Unsupported(
            "bridge correction requires a convex polygon".into(),
        ));
    }
    if !d.contains(x0) {
        let mut m = Moments::zeros(checkpoints.len(), cross);
        m.n = params.n;
        return Ok((checkpoints, dt, bridge, m));
    }
    let run = Run {
        domain: Domain::new(d),
        x0,
        idx,
        dt,
        checkpoints: checkpoints.clone(),
        bridge,
        cross,
    };
    Ok((checkpoints, dt, bridge, run.simulate(params.n, params.seed)))
}

/// Skeleton estimate of `P_{x0}(τ_D > t)`: a path survives iff all `m` grid
/// positions lie in `D`. With bridge correction (`α = 2` only, convex `D`)
/// each surviving step is weighted by the product over edges of the
/// half-plane non-crossing probabilities of the Brownian bridge.
///
/// A start outside the closed polygon gives `p_hat = 0` exactly.
pub fn estimate_exit_probability(
    d: &Polygon,
    x0: Point2,
    idx: StableIndex,
    params: SimParams,
) -> Result<ExitEstimate> {
    Ok(estimate_exit_curve(d, x0, idx, params, &[params.t])?.remove(0))
}

/// Survival estimates at several horizons from one set of paths. The grid step
/// is `max(t_list) / m` and each horizon is rounded up to the grid; the
/// reported `t` and `m` are the snapped horizon and its step count. `params.t`
/// is not used.
pub fn estimate_exit_curve(
    d: &Polygon,
    x0: Point2,
    idx: StableIndex,
    params: SimParams,
    t_list: &[f64],
) -> Result<Vec<ExitEstimate>> {
    let (cp, dt, bridge, mom) = run_curve(d, x0, idx, &params, t_list, false)?;
    Ok(cp
        .iter()
        .enumerate()
        .map(|(h, &s)| record(&mom, h, s, dt, idx, &params, bridge))
        .collect())
}

/// Log-slope eigenvalue estimate with its delta-method standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenEstimate {
    pub lambda: f64,
    pub std_err: f64,
    pub early: ExitEstimate,
    pub late: ExitEstimate,
}

/// `λ ≈ -(ln p̂(t2) - ln p̂(t1)) / (t2 - t1)` from shared paths on the grid
/// `t2 / m`. Fails if either estimate is below ten standard errors.
pub fn estimate_eigenvalue(
    d: &Polygon,
    x0: Point2,
    idx: StableIndex,
    params: SimParams,
    t1: f64,
    t2: f64,
) -> Result<EigenEstimate> {
    if !(t1 > 0.0 && t1 < t2) {
        return Err(Error::Domain(format!(
            "need 0 < t1 < t2, got t1 = {t1}, t2 = {t2}"
        )));
    }
    let (cp, dt, bridge, mom) = run_curve(d, x0, idx, &params, &[t1, t2], true)?;
    let early = record(&mom, 0, cp[0], dt, idx, &params, bridge);
    let late = record(&mom, 1, cp[1], dt, idx, &params, bridge);
    for e in [&early, &late] {
        if e.p_hat <= 10.0 * e.std_err || e.p_hat <= 0.0 {
            return Err(Error::InsufficientSamples(format!(
                "p_hat = {} at t = {} is not above 10 standard errors ({})",
                e.p_hat, e.t, e.std_err
            )));
        }
    }
    if cp[0] == cp[1] {
        return Err(Error::Domain(
            "t1 and t2 snap to the same grid time; increase m".into(),
        ));
    }
    let span = late.t - early.t;
    let lambda = -(late.p_hat.ln() - early.p_hat.ln()) / span;
    let (p1, p2) = (early.p_hat, late.p_hat);
    let var = (mom.var(0) / (p1 * p1) + mom.var(1) / (p2 * p2) - 2.0 * mom.cov(0, 1) / (p1 * p2))
        / mom.n as f64;
    Ok(EigenEstimate {
        lambda,
        std_err: var.max(0.0).sqrt() / span,
        early,
        late,
    })
}
