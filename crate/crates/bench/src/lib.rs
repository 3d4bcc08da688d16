//! Benchmark corpus, baselines, head-to-head harness and plot-data export
//! for the `polymin` solver.

pub mod baselines;
pub mod corpus;
pub mod export;
pub mod harness;
pub mod oracle;
