//! Criterion benchmarks for the engine; see `benches/`.
