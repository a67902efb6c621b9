//! Independent reference algorithms and the KKT optimality certificate.
//!
//! Everything here validates the sort-and-threshold path from the outside:
//! Dykstra's alternating projections, Michelot's active-set method, and
//! bisection on the water-filling equation. None of these is called by the
//! projection code itself.

use crate::error::{Error, Result};
use crate::vector::RealVector;

/// Iteration budget and convergence threshold for the iterative oracles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub max_iterations: usize,
    /// Convergence threshold on the distance between successive iterates
    /// (Dykstra) or on the bracket width (bisection).
    pub tolerance: f64,
}

impl OracleConfig {
    pub fn new(max_iterations: usize, tolerance: f64) -> Result<Self> {
        if max_iterations < 1 {
            return Err(Error::InvalidParameter(
                "max_iterations must be >= 1".into(),
            ));
        }
        if !(tolerance.is_finite() && tolerance > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be a positive finite real, got {tolerance}"
            )));
        }
        Ok(Self {
            max_iterations,
            tolerance,
        })
    }
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            max_iterations: 100_000,
            tolerance: 1e-12,
        }
    }
}

/// Outcome of Dykstra's method. `converged` is false when the iteration
/// budget ran out first; the final iterate and its successive-step residual
/// are returned either way.
#[derive(Debug, Clone, PartialEq)]
pub struct DykstraOutcome {
    pub x: RealVector,
    pub iterations: usize,
    pub residual: f64,
    pub converged: bool,
}

/// Dykstra's alternating projections onto the nonnegative orthant and the
/// hyperplane `Σx = 1`, whose intersection is the simplex. The correction
/// terms make the limit the true projection, not just a feasible point.
pub fn dykstra_project(y: &RealVector, cfg: &OracleConfig) -> DykstraOutcome {
    dykstra_project_scaled(y, 1.0, cfg)
}

/// Dykstra variant with hyperplane `Σx = target`.
pub fn dykstra_project_scaled(y: &RealVector, target: f64, cfg: &OracleConfig) -> DykstraOutcome {
    let n = y.len();
    let mut x: Vec<f64> = y.as_slice().to_vec();
    let mut p = vec![0.0; n]; // correction for the orthant step
    let mut q = vec![0.0; n]; // correction for the hyperplane step
    let mut prev = x.clone();
    let mut residual = f64::INFINITY;

    for iteration in 1..=cfg.max_iterations {
        // orthant step
        let mut u = vec![0.0; n];
        for i in 0..n {
            let v = x[i] + p[i];
            u[i] = v.max(0.0);
            p[i] = v - u[i];
        }
        // hyperplane step
        let sum: f64 = u.iter().zip(q.iter()).map(|(&ui, &qi)| ui + qi).sum();
        let shift = (target - sum) / n as f64;
        for i in 0..n {
            let v = u[i] + q[i];
            x[i] = v + shift;
            q[i] = v - x[i];
        }

        let step = x
            .iter()
            .zip(prev.iter())
            .map(|(&a, &b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        // the x iterate alone can repeat while the method is still far from
        // the intersection, so also require the two half-step points to agree
        let gap = x
            .iter()
            .zip(u.iter())
            .map(|(&a, &b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        residual = step.max(gap);
        if residual <= cfg.tolerance {
            return DykstraOutcome {
                x: RealVector::new_unchecked(x),
                iterations: iteration,
                residual,
                converged: true,
            };
        }
        prev.copy_from_slice(&x);
    }

    DykstraOutcome {
        x: RealVector::new_unchecked(x),
        iterations: cfg.max_iterations,
        residual,
        converged: false,
    }
}

/// Michelot's finite active-set method: project onto the affine set
/// `{Σ_{i∈A} x_i = 1}` over the current active set, drop the components that
/// went negative, repeat. The active set only shrinks, so at most `n`
/// rounds.
pub fn michelot_project(y: &RealVector) -> RealVector {
    michelot_project_scaled(y, 1.0)
}

pub fn michelot_project_scaled(y: &RealVector, target: f64) -> RealVector {
    let n = y.len();
    let mut active = vec![true; n];
    let mut count = n;
    loop {
        let sum: f64 = (0..n).filter(|&i| active[i]).map(|i| y[i]).sum();
        let t = (sum - target) / count as f64;
        let mut dropped = 0;
        for i in 0..n {
            if active[i] && y[i] - t < 0.0 {
                active[i] = false;
                dropped += 1;
            }
        }
        if dropped == 0 {
            let x = (0..n)
                .map(|i| if active[i] { y[i] - t } else { 0.0 })
                .collect();
            return RealVector::new_unchecked(x);
        }
        count -= dropped;
        // the last survivor can never go negative: t <= max over the set
        debug_assert!(count >= 1);
    }
}

/// Solves `Σ max(y_i - t, 0) = target` for `t` by bisection and returns
/// `(y - t)₊`. The bracket `[min y - target, max y]` always works:
/// `g(min y - target) >= n·target/n ... >= target` and `g(max y) = 0`.
pub fn bisection_project(y: &RealVector, cfg: &OracleConfig) -> RealVector {
    bisection_project_scaled(y, 1.0, cfg)
}

pub fn bisection_project_scaled(y: &RealVector, target: f64, cfg: &OracleConfig) -> RealVector {
    let min = y.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = y.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let excess = |t: f64| -> f64 { y.iter().map(|&v| (v - t).max(0.0)).sum::<f64>() - target };

    let mut lo = min - target;
    let mut hi = max;
    for _ in 0..cfg.max_iterations {
        if hi - lo <= cfg.tolerance {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if excess(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    RealVector::new_unchecked(y.iter().map(|&v| (v - t).max(0.0)).collect())
}

/// Optimality certificate for a candidate pair `(x, t)`: the largest of the
/// feasibility, nonnegativity, stationarity, and complementarity violations.
/// Zero exactly when `x` is the projection of `y` and `t` its threshold.
pub fn kkt_residual(y: &RealVector, x: &RealVector, t: f64) -> Result<f64> {
    kkt_residual_scaled(y, x, t, 1.0)
}

pub(crate) fn kkt_residual_scaled(
    y: &RealVector,
    x: &RealVector,
    t: f64,
    target: f64,
) -> Result<f64> {
    if y.len() != x.len() {
        return Err(Error::LengthMismatch {
            left: y.len(),
            right: x.len(),
        });
    }
    let sum: f64 = x.iter().sum();
    let mut residual = (sum - target).abs();
    for (&yi, &xi) in y.iter().zip(x.iter()) {
        residual = residual.max(-xi).max(0.0);
        // exact zero split is valid: the projection emits exact zeros
        if xi > 0.0 {
            residual = residual.max((yi - xi - t).abs());
        } else {
            residual = residual.max((yi - t).max(0.0));
        }
    }
    Ok(residual)
}
