//! Library side of the `defdom` binary, kept separate so the benchmark
//! aggregation and the acceptance suite can call it directly.

pub mod bench;
pub mod commands;
pub mod plan;
