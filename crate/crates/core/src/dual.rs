//! Dual machinery behind the projection: the Fenchel conjugate of the
//! simplex indicator (the max function), the prox of the max, and the
//! univariate objective `f(t) = t + ½‖ẑ(t) - y‖²` whose root `f'(t̂) = 0`
//! determines the threshold.
//!
//! `f` is piecewise quadratic and C¹; on the segment `[y_(i), y_(i+1))` it is
//! `t + ½ Σ_{j>i} (t - y_(j))²`, the first segment (`t <= y_(1)`) sums over
//! all components, and beyond `y_(n)` the `i = n-1` formula continues (the
//! top component must be lifted to `t`, which the clip form does not see).

use crate::projection::project_simplex;
use crate::vector::{RealVector, SortedVector};

/// `π*(y) = max_i y_i`, the Fenchel conjugate of the simplex indicator.
pub fn fenchel_max(y: &RealVector) -> f64 {
    y.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
}

/// `ẑ(t)`: components above `t` are clipped down to `t`, the rest pass
/// through.
pub fn clip_at(y: &RealVector, t: f64) -> crate::error::Result<RealVector> {
    if !t.is_finite() {
        return Err(crate::error::Error::NonFiniteThreshold { value: t });
    }
    Ok(RealVector::new_unchecked(
        y.iter().map(|&v| if v > t { t } else { v }).collect(),
    ))
}

/// Index of the quadratic segment containing `t`, with the half-open
/// convention `[y_(i), y_(i+1))`. Values past the top breakpoint stay on the
/// last segment.
fn segment_index(sorted: &[f64], t: f64) -> usize {
    let count_le = sorted.partition_point(|&v| v <= t);
    count_le.min(sorted.len() - 1)
}

/// `f(t) = t + ½‖ẑ(t) - y‖²` under the constraint `max ẑ = t`.
pub fn eval_f(s: &SortedVector, t: f64) -> f64 {
    let sorted = s.sorted();
    let i = segment_index(sorted, t);
    let sq: f64 = sorted[i..].iter().map(|&v| (t - v) * (t - v)).sum();
    t + 0.5 * sq
}

/// `f'(t) = 1 + Σ_{j>i} (t - y_(j))` on the segment containing `t`.
pub fn eval_f_prime(s: &SortedVector, t: f64) -> f64 {
    let sorted = s.sorted();
    let i = segment_index(sorted, t);
    let n_tail = (sorted.len() - i) as f64;
    1.0 + n_tail * t - s.suffix_sums()[i]
}

/// Prox of the max function: `y - P_△(y)`. Defined by subtraction so the
/// Moreau identity `prox_max(y) + P_△(y) = y` holds component-wise.
pub fn prox_max(y: &RealVector) -> RealVector {
    let x = project_simplex(y).x;
    RealVector::new_unchecked(y.iter().zip(x.iter()).map(|(&yi, &xi)| yi - xi).collect())
}
