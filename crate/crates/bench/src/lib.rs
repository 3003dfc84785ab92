//! Benchmarks for `simprep-core`; see `benches/`.
