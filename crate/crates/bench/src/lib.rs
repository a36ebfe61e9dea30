//! Criterion benchmarks for the subrack pipeline live in `benches/`.
