//! Criterion benchmarks for `djc-core`.
