//! Criterion benchmarks for the exact and numeric pipelines; see `benches/`.
