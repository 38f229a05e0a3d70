//! Benchmarks for cuspforge live in `benches/`.
