//! Deterministic reproduction of the scatter and timing experiments.
//!
//! Random points come from a ChaCha8 stream (seeded explicitly) pushed
//! through the ziggurat normal transform of `rand_distr::Normal`, so a given
//! seed reproduces the same samples on every run of the same build. Timing
//! uses the monotonic clock and covers projection only; sampling happens
//! before the clock starts.

use std::io::Write;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::projection::project_simplex;
use crate::vector::RealVector;

/// One row of the timing experiment. `threads` is `None` for the default
/// single-threaded mode and populated only when the batch was partitioned
/// across threads; the CSV gains a `threads` column in that case.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRecord {
    pub n: usize,
    pub point_count: usize,
    pub seed: u64,
    pub wall_time_seconds: f64,
    pub projections_per_second: f64,
    pub threads: Option<usize>,
}

/// One input/output pair of the scatter experiment (n = 2 or 3).
#[derive(Debug, Clone, PartialEq)]
pub struct ScatterRecord {
    pub input_point: RealVector,
    pub projected_point: RealVector,
}

/// Knobs for [`run_timing_sweep_with`]. `repeats` > 1 measures each batch
/// that many times and keeps the median, which damps scheduler noise at
/// small n.
#[derive(Debug, Clone, Copy)]
pub struct TimingOptions {
    pub repeats: usize,
    pub parallel: bool,
}

impl Default for TimingOptions {
    fn default() -> Self {
        Self {
            repeats: 1,
            parallel: false,
        }
    }
}

/// Seed used by the command-line front end and the acceptance runs when the
/// caller does not supply one.
pub const DEFAULT_SEED: u64 = 42;

/// Mixes the sweep seed with `n` so each dimension gets a fresh,
/// reproducible stream.
fn derive_seed(seed: u64, n: usize) -> u64 {
    seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// `count` i.i.d. samples from N(0, variance·I_n), deterministic in `seed`.
pub fn sample_gaussian(
    n: usize,
    count: usize,
    variance: f64,
    seed: u64,
) -> Result<Vec<RealVector>> {
    if n < 1 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    if count < 1 {
        return Err(Error::InvalidParameter("count must be >= 1".into()));
    }
    if !(variance.is_finite() && variance > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "variance must be a positive finite real, got {variance}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, variance.sqrt()).expect("validated above");
    Ok((0..count)
        .map(|_| RealVector::new_unchecked((0..n).map(|_| normal.sample(&mut rng)).collect()))
        .collect())
}

fn check_feasible(x: &RealVector, n: usize, index: usize) -> Result<()> {
    let sum: f64 = x.iter().sum();
    let tol = 1e-12 * n as f64;
    if let Some(&bad) = x.iter().find(|&&v| v < 0.0) {
        return Err(Error::Infeasible {
            n,
            index,
            detail: format!("negative component {bad}"),
        });
    }
    if (sum - 1.0).abs() > tol {
        return Err(Error::Infeasible {
            n,
            index,
            detail: format!("sum {sum} off by more than {tol}"),
        });
    }
    Ok(())
}

/// Projects 1024 Gaussian points onto the simplex; variance 1 for n = 2 and
/// 0.5 for n = 3. Every output is verified feasible before it is returned.
pub fn run_scatter_experiment(n: usize, seed: u64) -> Result<Vec<ScatterRecord>> {
    let variance = match n {
        2 => 1.0,
        3 => 0.5,
        _ => {
            return Err(Error::InvalidParameter(format!(
                "scatter experiment supports n = 2 or 3, got {n}"
            )))
        }
    };
    let points = sample_gaussian(n, 1024, variance, seed)?;
    points
        .into_iter()
        .enumerate()
        .map(|(index, input_point)| {
            let projected_point = project_simplex(&input_point).x;
            check_feasible(&projected_point, n, index)?;
            Ok(ScatterRecord {
                input_point,
                projected_point,
            })
        })
        .collect()
}

/// Times batches of `point_count` projections for each dimension in
/// `n_min..=n_max`, single-threaded, one measurement per batch.
pub fn run_timing_sweep(
    n_min: usize,
    n_max: usize,
    point_count: usize,
    seed: u64,
) -> Result<Vec<BenchmarkRecord>> {
    run_timing_sweep_with(n_min, n_max, point_count, seed, TimingOptions::default())
}

/// [`run_timing_sweep`] with repeat-and-take-median and an optional
/// parallel mode that partitions each batch across threads.
pub fn run_timing_sweep_with(
    n_min: usize,
    n_max: usize,
    point_count: usize,
    seed: u64,
    options: TimingOptions,
) -> Result<Vec<BenchmarkRecord>> {
    if n_min < 2 || n_min > n_max {
        return Err(Error::InvalidParameter(format!(
            "need 2 <= n_min <= n_max, got {n_min}..{n_max}"
        )));
    }
    if point_count < 1 {
        return Err(Error::InvalidParameter("point_count must be >= 1".into()));
    }
    if options.repeats < 1 {
        return Err(Error::InvalidParameter("repeats must be >= 1".into()));
    }

    let mut records = Vec::with_capacity(n_max - n_min + 1);
    for n in n_min..=n_max {
        // fresh samples per n, statistically identical batches
        let batch = sample_gaussian(n, point_count, 1.0, derive_seed(seed, n))?;
        let mut times = Vec::with_capacity(options.repeats);
        let mut projected: Vec<RealVector> = Vec::new();
        for _ in 0..options.repeats {
            let start = Instant::now();
            projected = if options.parallel {
                batch.par_iter().map(|y| project_simplex(y).x).collect()
            } else {
                batch.iter().map(|y| project_simplex(y).x).collect()
            };
            times.push(start.elapsed().as_secs_f64());
        }
        for (index, x) in projected.iter().enumerate() {
            check_feasible(x, n, index)?;
        }
        times.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite times"));
        let wall_time_seconds = times[times.len() / 2].max(f64::MIN_POSITIVE);
        records.push(BenchmarkRecord {
            n,
            point_count,
            seed,
            wall_time_seconds,
            projections_per_second: point_count as f64 / wall_time_seconds,
            threads: options.parallel.then(rayon::current_num_threads),
        });
    }
    Ok(records)
}

/// 17 significant digits, enough to reparse bit-exactly.
pub fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

/// A record type that knows its CSV header and row rendering.
pub trait CsvRecord {
    fn csv_header(&self) -> String;
    fn csv_row(&self) -> String;
}

impl CsvRecord for BenchmarkRecord {
    fn csv_header(&self) -> String {
        let mut h = "n,point_count,seed,wall_time_seconds,projections_per_second".to_string();
        if self.threads.is_some() {
            h.push_str(",threads");
        }
        h
    }

    fn csv_row(&self) -> String {
        let mut row = format!(
            "{},{},{},{},{}",
            self.n,
            self.point_count,
            self.seed,
            fmt_real(self.wall_time_seconds),
            fmt_real(self.projections_per_second)
        );
        if let Some(threads) = self.threads {
            row.push_str(&format!(",{threads}"));
        }
        row
    }
}

impl CsvRecord for ScatterRecord {
    fn csv_header(&self) -> String {
        let n = self.input_point.len();
        let ys = (1..=n).map(|i| format!("y{i}")).collect::<Vec<_>>();
        let xs = (1..=n).map(|i| format!("x{i}")).collect::<Vec<_>>();
        format!("{},{}", ys.join(","), xs.join(","))
    }

    fn csv_row(&self) -> String {
        self.input_point
            .iter()
            .chain(self.projected_point.iter())
            .map(|&v| fmt_real(v))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Writes header plus one row per record. Empty input is an error.
pub fn emit_csv<R: CsvRecord, W: Write>(records: &[R], destination: &mut W) -> Result<()> {
    let first = records.first().ok_or(Error::EmptyRecords)?;
    writeln!(destination, "{}", first.csv_header())?;
    for record in records {
        writeln!(destination, "{}", record.csv_row())?;
    }
    Ok(())
}
