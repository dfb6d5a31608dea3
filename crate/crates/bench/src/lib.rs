//! Criterion benchmarks for the determinant pipeline live in `benches/`.
