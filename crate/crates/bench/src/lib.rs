//! Criterion benchmarks for `grigorchuk-core`; see `benches/`.
