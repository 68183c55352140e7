//! Experiment harness for the `tspopt` solvers: seeded repeated trials with
//! summary statistics, written as CSV or JSON.

pub mod experiment;
pub mod output;
pub mod seed;
pub mod stats;

pub use experiment::{compare, run_experiment, Comparison, ExperimentOptions, Solver};
pub use seed::derive_trial_seed;
pub use stats::{ExperimentStats, Summary, TrialRecord};
