//! Benchmark harness: sample generators, experiment runner, comparison
//! statistics and landscape export.

mod distributions;
mod experiment;
mod landscape;
mod stats;

pub use distributions::{generate_sample, normal_cdf, pick_z, DistributionSpec, Family};
pub use experiment::{
    flow_checkpoints, run_experiment, AlgorithmEntry, Cell, ExperimentConfig, ExperimentResults, FlowRow, RawRecord,
    StatRow, StatTable,
};
pub use landscape::{landscape, LandscapePoint};
pub use stats::{ave_rank, error_stats, midranks, perc_best};
