//! Trial records and batch summaries.

use serde::{Deserialize, Serialize};

/// Outcome of one solver invocation within an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial_id: u64,
    pub seed: u64,
    pub tour_length: f64,
    pub wall_time_ms: f64,
    pub fitness_evaluations: u64,
    pub iterations: u64,
}

/// Location and spread of the tour lengths of a batch.
///
/// `std` is the sample standard deviation. With a single trial it is
/// reported as 0 and `degenerate` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub degenerate: bool,
    pub mean_wall_time_ms: f64,
    pub mean_fitness_evaluations: f64,
    pub mean_iterations: f64,
}

impl Summary {
    /// Summarises `lengths`; the three `mean_*` counters are left at 0.
    ///
    /// # Panics
    /// If `lengths` is empty.
    pub fn of_lengths(lengths: &[f64]) -> Summary {
        assert!(!lengths.is_empty(), "summary of an empty batch");
        let mut sorted = lengths.to_vec();
        sorted.sort_by(f64::total_cmp);
        let count = lengths.len();
        let mean = self::mean(lengths);
        let std = if count > 1 {
            let ss: f64 = lengths.iter().map(|&x| (x - mean) * (x - mean)).sum();
            (ss / (count - 1) as f64).sqrt()
        } else {
            0.0
        };
        Summary {
            count,
            mean,
            std,
            min: sorted[0],
            q1: quantile(&sorted, 0.25),
            median: quantile(&sorted, 0.5),
            q3: quantile(&sorted, 0.75),
            max: sorted[count - 1],
            degenerate: count == 1,
            mean_wall_time_ms: 0.0,
            mean_fitness_evaluations: 0.0,
            mean_iterations: 0.0,
        }
    }

    pub fn of_trials(trials: &[TrialRecord]) -> Summary {
        let lengths: Vec<f64> = trials.iter().map(|t| t.tour_length).collect();
        let per = |f: fn(&TrialRecord) -> f64| mean(&trials.iter().map(f).collect::<Vec<_>>());
        Summary {
            mean_wall_time_ms: per(|t| t.wall_time_ms),
            mean_fitness_evaluations: per(|t| t.fitness_evaluations as f64),
            mean_iterations: per(|t| t.iterations as f64),
            ..Summary::of_lengths(&lengths)
        }
    }
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Inclusive quantile of ascending `sorted`: linear interpolation at
/// position `p * (n - 1)` between neighbouring order statistics.
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    let pos = p * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}

/// Per-trial records of a batch together with their summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentStats {
    pub trials: Vec<TrialRecord>,
    pub summary: Summary,
}

impl ExperimentStats {
    /// # Panics
    /// If `trials` is empty.
    pub fn from_trials(trials: Vec<TrialRecord>) -> Self {
        let summary = Summary::of_trials(&trials);
        ExperimentStats { trials, summary }
    }
}
