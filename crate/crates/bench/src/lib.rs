//! Criterion benchmarks for kernel algebra and model checks; see `benches/`.
