use std::fmt::Write as _;
use std::process::ExitCode;

use serde_json::json;
use steinersym::geometry::steiner_symmetrize;
use steinersym::schedules::{rectangle_frame, ScheduleRegistry};
use steinersym::stochastic::{estimate_eigenvalue, estimate_exit_curve};
use steinersym::verify::{CheckSuite, VerifyReport};
use steinersym::{Line, Point2, Polygon, SimParams, StableIndex};

use crate::output::{emit, load_json, num, CliError, CliResult};
use crate::{EigenArgs, ExitArgs, ScheduleArgs, SimArgs, SymmetrizeArgs, VerifyArgs};

pub fn symmetrize(a: SymmetrizeArgs) -> CliResult<ExitCode> {
    let polygon: Polygon = load_json(&a.polygon)?;
    let line: Line = load_json(&a.line)?;
    let sym = steiner_symmetrize(&polygon, &line)?;
    eprintln!(
        "area {} -> {}, diameter {} -> {}",
        polygon.area(),
        sym.area(),
        polygon.diameter(),
        sym.diameter()
    );
    emit(a.out.as_deref(), &sym, || {
        let mut s = String::from("x,y\n");
        for v in sym.vertices() {
            let _ = writeln!(s, "{},{}", num(v.x), num(v.y));
        }
        s
    })?;
    Ok(ExitCode::SUCCESS)
}

pub fn schedule(a: ScheduleArgs) -> CliResult<ExitCode> {
    let polygon: Polygon = load_json(&a.polygon)?;
    let registry = ScheduleRegistry::default();
    let strategy = registry.get(&a.kind).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown schedule {:?}; available: {}",
            a.kind,
            registry.names().join(", ")
        ))
    })?;
    let x0 = a.x0.unwrap_or_else(|| polygon.centroid());
    let states = strategy.run(&polygon, x0, a.steps)?;
    let record = json!({
        "kind": a.kind,
        "steps": a.steps,
        "x0": x0,
        "states": states,
    });
    emit(a.out.as_deref(), &record, || {
        let mut s = String::from("step,area,diameter,min_angle,ratio,tracked_x,tracked_y\n");
        for st in &states {
            let ratio = rectangle_frame(&st.polygon).map_or(f64::NAN, |f| f.params.aspect());
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{}",
                st.step,
                num(st.polygon.area()),
                num(st.polygon.diameter()),
                num(st.polygon.min_interior_angle()),
                num(ratio),
                num(st.tracked.x),
                num(st.tracked.y)
            );
        }
        s
    })?;
    Ok(ExitCode::SUCCESS)
}

fn sim_params(s: &SimArgs, t: f64) -> CliResult<(StableIndex, SimParams)> {
    let idx = StableIndex::new(s.alpha)?;
    let p = SimParams::new(t, s.m, s.n, s.seed).with_bridge(s.bridge);
    p.validate()?;
    Ok((idx, p))
}

fn start_point(polygon: &Polygon, x0: Option<Point2>) -> CliResult<Point2> {
    let x0 = x0.unwrap_or_else(|| polygon.centroid());
    if !x0.is_finite() {
        return Err(CliError::Usage("x0 must be finite".into()));
    }
    Ok(x0)
}

pub fn exitprob(a: ExitArgs) -> CliResult<ExitCode> {
    let polygon: Polygon = load_json(&a.polygon)?;
    let t_list = match (a.t, a.t_list) {
        (Some(t), None) => vec![t],
        (None, Some(ts)) => ts,
        (None, None) => vec![0.3],
        (Some(_), Some(_)) => return Err(CliError::Usage("give either --t or --t-list".into())),
    };
    let t_max = t_list.last().copied().unwrap_or(0.0);
    let (idx, params) = sim_params(&a.sim, t_max)?;
    let x0 = start_point(&polygon, a.x0)?;
    let estimates = estimate_exit_curve(&polygon, x0, idx, params, &t_list)?;
    let record = json!({
        "polygon": polygon,
        "x0": x0,
        "params": params,
        "alpha": idx.alpha(),
        "t_requested": t_list,
        "estimates": estimates,
    });
    emit(a.out.as_deref(), &record, || {
        let mut s = String::from("t,p_hat,std_err,n,m,alpha,seed,bridge,x0_x,x0_y\n");
        for e in &estimates {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{}",
                num(e.t),
                num(e.p_hat),
                num(e.std_err),
                e.n,
                e.m,
                num(e.alpha),
                e.seed,
                e.bridge,
                num(x0.x),
                num(x0.y)
            );
        }
        s
    })?;
    Ok(ExitCode::SUCCESS)
}

pub fn eigen(a: EigenArgs) -> CliResult<ExitCode> {
    let polygon: Polygon = load_json(&a.polygon)?;
    let (idx, params) = sim_params(&a.sim, a.t2)?;
    let x0 = start_point(&polygon, a.x0)?;
    let est = estimate_eigenvalue(&polygon, x0, idx, params, a.t1, a.t2)?;
    let record = json!({
        "polygon": polygon,
        "x0": x0,
        "params": params,
        "alpha": idx.alpha(),
        "t1": a.t1,
        "t2": a.t2,
        "estimate": est,
    });
    emit(a.out.as_deref(), &record, || {
        format!(
            "lambda,std_err,t1,t2,p1,p2,n,m,alpha,seed,bridge\n{},{},{},{},{},{},{},{},{},{},{}\n",
            num(est.lambda),
            num(est.std_err),
            num(est.early.t),
            num(est.late.t),
            num(est.early.p_hat),
            num(est.late.p_hat),
            params.n,
            params.m,
            num(idx.alpha()),
            params.seed,
            est.late.bridge
        )
    })?;
    Ok(ExitCode::SUCCESS)
}

pub fn verify(a: VerifyArgs) -> CliResult<ExitCode> {
    let suite = CheckSuite::default_suite(a.seed);
    let reports = suite.run(a.seed);
    for r in &reports {
        eprintln!("{} {}", if r.passed { "PASS" } else { "FAIL" }, r.name);
    }
    let all = reports.iter().all(|r| r.passed);
    let record = json!({ "seed": a.seed, "passed": all, "reports": reports });
    emit(a.out.as_deref(), &record, || {
        let mut s = format!("{}\n", VerifyReport::CSV_HEADER);
        for r in &reports {
            let _ = writeln!(s, "{}", r.csv_row());
        }
        s
    })?;
    Ok(if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
