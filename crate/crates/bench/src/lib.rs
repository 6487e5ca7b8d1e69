//! Benchmark-only crate; see `benches/manifold.rs`.
