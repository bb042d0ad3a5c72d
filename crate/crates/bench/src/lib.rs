//! Criterion benchmarks for the exact kernel; see `benches/`.
