mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use steinersym::Point2;

/// Fixed default seed so that runs are reproducible unless asked otherwise.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser)]
#[command(
    name = "steinersym",
    version,
    about = "Steiner symmetrization and exit-time experiments on polygons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Symmetrize a polygon about a line.
    Symmetrize(SymmetrizeArgs),
    /// Run a symmetrization schedule and dump every state.
    Schedule(ScheduleArgs),
    /// Estimate P_x(τ > t) at one or more horizons.
    Exitprob(ExitArgs),
    /// Estimate the principal Dirichlet eigenvalue from the survival tail.
    Eigen(EigenArgs),
    /// Run the default verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SymmetrizeArgs {
    /// Polygon JSON file (or inline JSON) of the form {"vertices": [[x, y], ...]}.
    #[arg(long)]
    polygon: String,
    /// Line JSON file (or inline JSON) of the form {"anchor": [x, y], "direction": [dx, dy]}.
    #[arg(long)]
    line: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScheduleArgs {
    #[arg(long)]
    polygon: String,
    /// One of: triangle-mediator, quad-rectangle, rectangle-square, quad-square.
    #[arg(long, default_value = "triangle-mediator")]
    kind: String,
    /// Tracked starting point "x,y"; defaults to the centroid.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    x0: Option<Point2>,
    /// Symmetrizations (triangle) or stages (rectangle).
    #[arg(long, default_value_t = 30)]
    steps: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct SimArgs {
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    #[arg(long, default_value_t = 128)]
    m: usize,
    #[arg(long, default_value_t = 100_000)]
    n: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Brownian-bridge correction (alpha = 2, convex polygons).
    #[arg(long)]
    bridge: bool,
}

#[derive(Args)]
struct ExitArgs {
    #[arg(long)]
    polygon: String,
    /// Starting point "x,y"; defaults to the centroid.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    x0: Option<Point2>,
    #[arg(long, conflicts_with = "t_list")]
    t: Option<f64>,
    /// Comma-separated ascending horizons evaluated on shared paths.
    #[arg(long, value_delimiter = ',')]
    t_list: Option<Vec<f64>>,
    #[command(flatten)]
    sim: SimArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EigenArgs {
    #[arg(long)]
    polygon: String,
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    x0: Option<Point2>,
    #[arg(long, default_value_t = 0.3)]
    t1: f64,
    #[arg(long, default_value_t = 0.5)]
    t2: f64,
    #[command(flatten)]
    sim: SimArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_point(s: &str) -> Result<Point2, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(format!("expected \"x,y\", got {s:?}"));
    }
    let x = parts[0].parse::<f64>().map_err(|e| e.to_string())?;
    let y = parts[1].parse::<f64>().map_err(|e| e.to_string())?;
    Ok(Point2::new(x, y))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Symmetrize(a) => commands::symmetrize(a),
        Command::Schedule(a) => commands::schedule(a),
        Command::Exitprob(a) => commands::exitprob(a),
        Command::Eigen(a) => commands::eigen(a),
        Command::Verify(a) => commands::verify(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let record = serde_json::json!({ "error": e.to_string(), "kind": e.kind() });
            eprintln!("{record}");
            ExitCode::from(2)
        }
    }
}
