//! Input vectors and their sorted form.
//!
//! [`RealVector`] is the validated input/output type of every projection:
//! finite components, length at least one. [`SortedVector`] is an ascending
//! copy plus suffix sums, which make every threshold candidate an O(1)
//! computation.

use std::ops::Deref;

use crate::error::{Error, Result};

/// A finite-length vector of finite reals. Construction validates that every
/// component is finite and that the vector is non-empty; all downstream code
/// relies on those two facts.
#[derive(Debug, Clone, PartialEq)]
pub struct RealVector(Vec<f64>);

impl RealVector {
    /// Validates and wraps `values`. Rejects empty input and reports the
    /// index of the first non-finite component.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index, value });
            }
        }
        Ok(Self(values))
    }

    /// Wraps without validation. Caller must guarantee the invariants; used
    /// internally where components are produced by operations that cannot
    /// introduce non-finite values.
    pub(crate) fn new_unchecked(values: Vec<f64>) -> Self {
        debug_assert!(!values.is_empty());
        debug_assert!(values.iter().all(|v| v.is_finite()));
        Self(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false // n >= 1 by construction
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for RealVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for RealVector {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

impl TryFrom<&[f64]> for RealVector {
    type Error = Error;

    fn try_from(values: &[f64]) -> Result<Self> {
        Self::new(values.to_vec())
    }
}

impl From<RealVector> for Vec<f64> {
    fn from(v: RealVector) -> Vec<f64> {
        v.0
    }
}

/// Ascending-sorted copy of a [`RealVector`] together with suffix sums.
///
/// `suffix_sums` has length `n + 1`; `suffix_sums[i]` is the sum of
/// `sorted[i..n]`, so `suffix_sums[0]` is the total and `suffix_sums[n]` is 0.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedVector {
    sorted: Vec<f64>,
    suffix_sums: Vec<f64>,
}

impl SortedVector {
    pub(crate) fn from_sorted(sorted: Vec<f64>) -> Self {
        debug_assert!(sorted.windows(2).all(|w| w[0] <= w[1]));
        let n = sorted.len();
        let mut suffix_sums = vec![0.0; n + 1];
        for i in (0..n).rev() {
            suffix_sums[i] = suffix_sums[i + 1] + sorted[i];
        }
        Self {
            sorted,
            suffix_sums,
        }
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Components in ascending order.
    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    /// `suffix_sums()[i]` = sum of the `n - i` largest components.
    pub fn suffix_sums(&self) -> &[f64] {
        &self.suffix_sums
    }

    /// Largest component.
    pub fn max(&self) -> f64 {
        *self.sorted.last().expect("n >= 1")
    }

    /// Smallest component.
    pub fn min(&self) -> f64 {
        self.sorted[0]
    }

    /// Sum of all components.
    pub fn total(&self) -> f64 {
        self.suffix_sums[0]
    }
}

/// Sorts `y` ascending and precomputes suffix sums. `y` itself is untouched;
/// tie order among equal components is unspecified (it cannot affect any
/// downstream value).
pub fn sort_ascending(y: &RealVector) -> SortedVector {
    let mut sorted = y.as_slice().to_vec();
    sorted.sort_unstable_by(|a, b| a.partial_cmp(b).expect("components are finite"));
    SortedVector::from_sorted(sorted)
}
