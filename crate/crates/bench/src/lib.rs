//! Criterion benchmarks for the transforms, symbols and special functions live in `benches/`.
