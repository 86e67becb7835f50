//! Criterion benchmarks for `convsemi` live under `benches/`.
