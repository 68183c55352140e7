use crate::scalar::Scalar;
use crate::tour::Tour;

/// Outcome of one solver invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult<T> {
    pub best_tour: Tour,
    pub best_length: T,
    /// Generations for the GA, accepted moves for hill climbing.
    pub iterations: u64,
    pub fitness_evaluations: u64,
    pub wall_time_ms: f64,
    /// Hill-climbing runs performed; always 1 for the GA.
    pub runs: u64,
    /// Hill-climbing runs that stopped because their start was already visited.
    pub early_outs: u64,
    /// Hill-climbing runs that hit the step cap.
    pub aborted_runs: u64,
    /// Best-so-far length after each generation (GA) or each run (hill climbing).
    pub history: Vec<T>,
}

impl<T: Scalar> RunResult<T> {
    pub fn best_length_f64(&self) -> f64 {
        self.best_length.to_f64_lossy()
    }
}
