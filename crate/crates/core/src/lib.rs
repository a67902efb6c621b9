//! Exact Euclidean projection onto the canonical simplex
//! `△ⁿ = {x : x >= 0, Σx = 1}` by sort and threshold, plus the dual
//! machinery behind it, independent oracle algorithms for validation, and
//! deterministic experiment drivers.
//!
//! The main entry point is [`project_simplex`]:
//!
//! ```
//! use projsplx::{project_simplex, RealVector};
//!
//! let y = RealVector::new(vec![0.0, 2.0]).unwrap();
//! let result = project_simplex(&y);
//! assert_eq!(result.x.as_slice(), &[0.0, 1.0]);
//! assert_eq!(result.threshold.t_hat, 1.0);
//! ```
//!
//! All operations are pure functions; any value can be shared across
//! threads.

pub mod dual;
pub mod error;
pub mod experiments;
pub mod oracles;
pub mod projection;
pub mod vector;

pub use dual::{clip_at, eval_f, eval_f_prime, fenchel_max, prox_max};
pub use error::{Error, Result};
pub use projection::{
    find_threshold, project_simplex, project_simplex_scaled, threshold_candidates,
    ProjectionResult, ThresholdResult,
};
pub use vector::{sort_ascending, RealVector, SortedVector};
