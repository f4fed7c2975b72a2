//! Benchmark-only crate; see `benches/lattice_ops.rs`.
