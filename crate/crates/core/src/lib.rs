//! Symmetric TSP toolkit: tours and metrics, a genetic algorithm with a
//! reversal-invariant crossover, steepest-descent hill climbing with a
//! visited-state escape, TSPLIB parsing, and exact small-instance oracles.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! `*64` / `*32` aliases below fix the precision.

pub mod datasets;
pub mod error;
pub mod ga;
pub mod geometry;
pub mod hillclimb;
pub mod oracle;
pub mod result;
pub mod scalar;
pub mod tour;
pub mod tsplib;

pub use error::{Result, TspError};
pub use ga::{run_ga, CrossoverVariant, GaConfig, Population, SelectionScheme};
pub use geometry::{Fitness, Instance, Metric, Point};
pub use hillclimb::{run_hc, DownhillAllowance, HcConfig, HcVariant, VisitedSet};
pub use oracle::{brute_force, held_karp, ExactResult};
pub use result::RunResult;
pub use scalar::Scalar;
pub use tour::Tour;

pub type Point64 = Point<f64>;
pub type Metric64 = Metric<f64>;
pub type Instance64 = Instance<f64>;
pub type RunResult64 = RunResult<f64>;
pub type ExactResult64 = ExactResult<f64>;
pub type Population64 = Population<f64>;

pub type Point32 = Point<f32>;
pub type Metric32 = Metric<f32>;
pub type Instance32 = Instance<f32>;
pub type RunResult32 = RunResult<f32>;
pub type ExactResult32 = ExactResult<f32>;
pub type Population32 = Population<f32>;
