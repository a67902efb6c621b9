//! Sort-and-threshold projection onto the canonical simplex.
//!
//! The projection of `y` is `x = (y - t̂)₊` where the threshold `t̂` solves the
//! water-filling equation `Σ max(y_i - t, 0) = 1`. After sorting `y`
//! ascending there are at most `n` candidate thresholds
//!
//! ```text
//! t_i = (Σ_{j>i} y_(j) - 1) / (n - i),   i = 0, …, n-1
//! ```
//!
//! and exactly one of them lands in its own interval. Scanning `i` from
//! `n-1` downward, the first candidate with `t_i >= y_(i)` is that one; if
//! none passes, `t_0` is it.

use crate::error::{Error, Result};
use crate::vector::{sort_ascending, RealVector, SortedVector};

/// The optimal threshold plus where the downward scan accepted it.
///
/// `accept_index` is the candidate index `i` (0 means the full-support
/// fallback); `active_count = n - i` is the number of strictly positive
/// output components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdResult {
    pub t_hat: f64,
    pub accept_index: usize,
    pub active_count: usize,
}

/// A projection together with its threshold and diagnostic residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionResult {
    pub x: RealVector,
    pub threshold: ThresholdResult,
    /// `|Σx - target|`
    pub sum_residual: f64,
    /// KKT certificate of (x, t̂); see [`crate::oracles::kkt_residual`].
    pub kkt_residual: f64,
}

/// All `n` candidate thresholds `(i, t_i)` in increasing `i`.
///
/// Exposed for testing and diagnostics; the production path computes the
/// candidates lazily inside [`find_threshold`].
pub fn threshold_candidates(s: &SortedVector) -> Vec<(usize, f64)> {
    candidates_scaled(s, 1.0)
}

fn candidates_scaled(s: &SortedVector, target: f64) -> Vec<(usize, f64)> {
    let n = s.len();
    (0..n)
        .map(|i| (i, (s.suffix_sums()[i] - target) / (n - i) as f64))
        .collect()
}

/// Finds the threshold `t̂` with `Σ max(y_(j) - t̂, 0) = 1` by the downward
/// candidate scan.
pub fn find_threshold(s: &SortedVector) -> ThresholdResult {
    find_threshold_scaled(s, 1.0)
}

pub(crate) fn find_threshold_scaled(s: &SortedVector, target: f64) -> ThresholdResult {
    let n = s.len();
    let sorted = s.sorted();
    let mut suffix = 0.0;
    for i in (1..n).rev() {
        // suffix accumulates y_(i+1) + … + y_(n); each candidate is O(1)
        suffix += sorted[i];
        let t_i = (suffix - target) / (n - i) as f64;
        // exact comparison, no epsilon: at a tie both branches give the same t̂
        if t_i >= sorted[i - 1] {
            return ThresholdResult {
                t_hat: t_i,
                accept_index: i,
                active_count: n - i,
            };
        }
    }
    suffix += sorted[0];
    ThresholdResult {
        t_hat: (suffix - target) / n as f64,
        accept_index: 0,
        active_count: n,
    }
}

/// Projects `y` onto the canonical simplex (nonnegative components summing
/// to 1). Output is in the caller's original component order; the sort is
/// internal.
pub fn project_simplex(y: &RealVector) -> ProjectionResult {
    project_with_target(y, 1.0)
}

/// Projects onto the scaled simplex `{x : x >= 0, Σx = a}`. With `a = 1`
/// identical to [`project_simplex`].
pub fn project_simplex_scaled(y: &RealVector, a: f64) -> Result<ProjectionResult> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::InvalidScale { value: a });
    }
    Ok(project_with_target(y, a))
}

fn project_with_target(y: &RealVector, target: f64) -> ProjectionResult {
    let s = sort_ascending(y);
    let threshold = find_threshold_scaled(&s, target);
    let t = threshold.t_hat;
    let x: Vec<f64> = y.iter().map(|&v| (v - t).max(0.0)).collect();
    let sum: f64 = x.iter().sum();
    let sum_residual = (sum - target).abs();
    let x = RealVector::new_unchecked(x);
    let kkt_residual = crate::oracles::kkt_residual_scaled(y, &x, t, target)
        .expect("lengths match by construction");
    ProjectionResult {
        x,
        threshold,
        sum_residual,
        kkt_residual,
    }
}
