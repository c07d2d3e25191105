//! Criterion benchmarks for the sector and duality kernels; see `benches/`.
