//! Criterion benchmarks for `mmcc`. See `benches/algorithms.rs`.
