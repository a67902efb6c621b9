//! Command line front end: batch projection of whitespace- or
//! comma-separated vectors, CSV experiment drivers, and a seeded
//! self-check.
//!
//! Exit codes: 0 on success, 1 when `check` finds a failure, 2 on
//! usage or input errors.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use projsplx::experiments::{
    emit_csv, fmt_real, run_scatter_experiment, run_timing_sweep_with, sample_gaussian,
    TimingOptions, DEFAULT_SEED,
};
use projsplx::oracles::{
    bisection_project_scaled, dykstra_project_scaled, kkt_residual, michelot_project_scaled,
    OracleConfig,
};
use projsplx::{project_simplex, project_simplex_scaled, RealVector};
use rayon::prelude::*;

#[derive(Parser)]
#[command(
    name = "projsplx",
    version,
    about = "Exact Euclidean projection onto the canonical simplex"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Project each input line onto the simplex
    Project(ProjectArgs),
    /// Time projection batches over a range of dimensions, emit CSV
    Bench(BenchArgs),
    /// Project a Gaussian point cloud, emit input/output pairs as CSV
    Scatter(ScatterArgs),
    /// Run seeded self-checks against the reference methods
    Check(CheckArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    /// Sort-and-threshold, exact
    Projsplx,
    /// Active-set elimination
    Michelot,
    /// Bisection on the water-filling equation
    Bisection,
    /// Dykstra alternating projections
    Dykstra,
}

#[derive(Args)]
struct ProjectArgs {
    /// Input file, one vector per line; "-" reads stdin
    #[arg(long, default_value = "-")]
    input: String,
    /// Output file; "-" writes stdout
    #[arg(long, default_value = "-")]
    output: String,
    /// Project onto the scaled simplex with component sum equal to this
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    radius: f64,
    #[arg(long, value_enum, default_value_t = Algorithm::Projsplx)]
    algorithm: Algorithm,
    /// Project lines across threads; output order still follows input order
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 2)]
    n_min: usize,
    #[arg(long, default_value_t = 50)]
    n_max: usize,
    /// Projections per dimension
    #[arg(long, default_value_t = 65536)]
    points: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Partition each batch across threads; adds a threads column
    #[arg(long)]
    parallel: bool,
    /// Output file; "-" writes stdout
    #[arg(long, default_value = "-")]
    output: String,
}

#[derive(Args)]
struct ScatterArgs {
    /// Dimension of the point cloud, 2 or 3
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output file; "-" writes stdout
    #[arg(long, default_value = "-")]
    output: String,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Project(args) => cmd_project(args).map(|()| ExitCode::SUCCESS),
        Command::Bench(args) => cmd_bench(args).map(|()| ExitCode::SUCCESS),
        Command::Scatter(args) => cmd_scatter(args).map(|()| ExitCode::SUCCESS),
        Command::Check(args) => cmd_check(args),
    }
}

fn open_input(path: &str) -> Result<Box<dyn BufRead>, String> {
    if path == "-" {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    File::open(path)
        .map(|f| Box::new(BufReader::new(f)) as Box<dyn BufRead>)
        .map_err(|e| format!("cannot open {path}: {e}"))
}

fn open_output(path: &str) -> Result<Box<dyn Write>, String> {
    if path == "-" {
        return Ok(Box::new(BufWriter::new(io::stdout())));
    }
    File::create(path)
        .map(|f| Box::new(BufWriter::new(f)) as Box<dyn Write>)
        .map_err(|e| format!("cannot create {path}: {e}"))
}

/// Lines carry independent problems and may differ in length. Tokens are
/// split on commas and whitespace; blank lines are skipped with a warning.
fn parse_lines(reader: Box<dyn BufRead>) -> Result<Vec<RealVector>, String> {
    let mut vectors = Vec::new();
    for (number, line) in reader.lines().enumerate() {
        let number = number + 1;
        let line = line.map_err(|e| format!("cannot read line {number}: {e}"))?;
        let mut components = Vec::new();
        let tokens = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty());
        for (position, token) in tokens.enumerate() {
            let value: f64 = token.parse().map_err(|_| {
                format!(
                    "line {number}, token {}: cannot parse {token:?} as a real number",
                    position + 1
                )
            })?;
            if !value.is_finite() {
                return Err(format!(
                    "line {number}, token {}: non-finite value {token:?}",
                    position + 1
                ));
            }
            components.push(value);
        }
        if components.is_empty() {
            eprintln!("warning: skipping empty line {number}");
            continue;
        }
        vectors.push(RealVector::new(components).expect("tokens are finite and nonempty"));
    }
    Ok(vectors)
}

fn cmd_project(args: ProjectArgs) -> Result<(), String> {
    if !(args.radius.is_finite() && args.radius > 0.0) {
        return Err(format!(
            "--radius must be a positive real, got {}",
            args.radius
        ));
    }
    let vectors = parse_lines(open_input(&args.input)?)?;
    let mut out = open_output(&args.output)?;

    let radius = args.radius;
    let dykstra_cfg = OracleConfig::default();
    let bisection_cfg = OracleConfig::new(200, 1e-14).expect("valid config");
    let project = |y: &RealVector| -> RealVector {
        match args.algorithm {
            Algorithm::Projsplx => {
                project_simplex_scaled(y, radius)
                    .expect("radius validated above")
                    .x
            }
            Algorithm::Michelot => michelot_project_scaled(y, radius),
            Algorithm::Bisection => bisection_project_scaled(y, radius, &bisection_cfg),
            Algorithm::Dykstra => dykstra_project_scaled(y, radius, &dykstra_cfg).x,
        }
    };
    let projected: Vec<RealVector> = if args.parallel {
        vectors.par_iter().map(project).collect()
    } else {
        vectors.iter().map(project).collect()
    };

    for x in &projected {
        let row: Vec<String> = x.iter().map(|&v| fmt_real(v)).collect();
        writeln!(out, "{}", row.join(",")).map_err(|e| format!("cannot write output: {e}"))?;
    }
    out.flush().map_err(|e| format!("cannot write output: {e}"))
}

fn cmd_bench(args: BenchArgs) -> Result<(), String> {
    let options = TimingOptions {
        repeats: 1,
        parallel: args.parallel,
    };
    let records = run_timing_sweep_with(args.n_min, args.n_max, args.points, args.seed, options)
        .map_err(|e| e.to_string())?;
    let mut out = open_output(&args.output)?;
    emit_csv(&records, &mut out).map_err(|e| e.to_string())?;
    out.flush().map_err(|e| format!("cannot write output: {e}"))
}

fn cmd_scatter(args: ScatterArgs) -> Result<(), String> {
    let records = run_scatter_experiment(args.n, args.seed).map_err(|e| e.to_string())?;
    let mut out = open_output(&args.output)?;
    emit_csv(&records, &mut out).map_err(|e| e.to_string())?;
    out.flush().map_err(|e| format!("cannot write output: {e}"))
}

/// Seeded, deterministic self-check at reduced scale. Prints one line per
/// check and exits 1 if any fails.
fn cmd_check(args: CheckArgs) -> Result<ExitCode, String> {
    let corpus = |n: usize, count: usize| -> Result<Vec<RealVector>, String> {
        let stream = args.seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        sample_gaussian(n, count, 1.0, stream).map_err(|e| e.to_string())
    };

    let mut all_passed = true;
    let mut report = |name: &str, outcome: Result<(), String>| match outcome {
        Ok(()) => println!("{name}: PASS"),
        Err(detail) => {
            all_passed = false;
            println!("{name}: FAIL ({detail})");
        }
    };

    let fmt_vec = |y: &RealVector| -> String {
        let row: Vec<String> = y.iter().map(|&v| fmt_real(v)).collect();
        format!("[{}]", row.join(", "))
    };

    let mut feasibility = Ok(());
    let mut optimality = Ok(());
    for n in [1usize, 2, 3, 5, 10, 50] {
        for y in corpus(n, 200)? {
            let result = project_simplex(&y);
            let tol = 1e-12 * n as f64;
            let sum: f64 = result.x.iter().sum();
            if feasibility.is_ok() && (result.x.iter().any(|&v| v < 0.0) || (sum - 1.0).abs() > tol)
            {
                feasibility = Err(format!("infeasible output for y={}", fmt_vec(&y)));
            }
            let residual =
                kkt_residual(&y, &result.x, result.threshold.t_hat).map_err(|e| e.to_string())?;
            if optimality.is_ok() && residual > tol {
                optimality = Err(format!("kkt residual {residual} for y={}", fmt_vec(&y)));
            }
        }
    }
    report("feasibility (x >= 0, sum = 1)", feasibility);
    report("optimality (kkt residual <= 1e-12 n)", optimality);

    let dykstra_cfg = OracleConfig::default();
    let bisection_cfg = OracleConfig::new(200, 1e-14).expect("valid config");
    let mut michelot = Ok(());
    let mut bisection = Ok(());
    let mut dykstra = Ok(());
    let max_diff = |a: &RealVector, b: &RealVector| -> f64 {
        a.iter()
            .zip(b.iter())
            .map(|(&x, &y)| (x - y).abs())
            .fold(0.0, f64::max)
    };
    for n in 2..=6usize {
        for y in corpus(n, 50)? {
            let exact = project_simplex(&y).x;
            let d = max_diff(&michelot_project_scaled(&y, 1.0), &exact);
            if michelot.is_ok() && d > 1e-10 {
                michelot = Err(format!("diff {d} for y={}", fmt_vec(&y)));
            }
            let d = max_diff(&bisection_project_scaled(&y, 1.0, &bisection_cfg), &exact);
            if bisection.is_ok() && d > 1e-10 {
                bisection = Err(format!("diff {d} for y={}", fmt_vec(&y)));
            }
            let outcome = dykstra_project_scaled(&y, 1.0, &dykstra_cfg);
            let d = max_diff(&outcome.x, &exact);
            if dykstra.is_ok() && (!outcome.converged || d > 1e-7) {
                dykstra = Err(format!("diff {d} for y={}", fmt_vec(&y)));
            }
        }
    }
    report("agreement with michelot (<= 1e-10)", michelot);
    report("agreement with bisection (<= 1e-10)", bisection);
    report("agreement with dykstra (<= 1e-7)", dykstra);

    let mut idempotence = Ok(());
    for n in [2usize, 5, 10] {
        for y in corpus(n, 100)? {
            let x = project_simplex(&y).x;
            let xx = project_simplex(&x).x;
            let d = max_diff(&x, &xx);
            if idempotence.is_ok() && d > 1e-12 {
                idempotence = Err(format!("diff {d} for y={}", fmt_vec(&y)));
            }
        }
    }
    report("idempotence (<= 1e-12)", idempotence);

    if all_passed {
        println!("all checks passed");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("some checks failed");
        Ok(ExitCode::from(1))
    }
}
