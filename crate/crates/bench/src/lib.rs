//! Criterion benchmarks for brillouin-core; see `benches/`.
