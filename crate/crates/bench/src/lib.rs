//! Benchmark-only crate; see `benches/projection.rs`.

pub use projsplx;
