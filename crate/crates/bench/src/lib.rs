//! Criterion benchmarks for `indiff-core`; see `benches/`.
