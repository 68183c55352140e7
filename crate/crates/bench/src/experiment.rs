//! Repeated-trial experiments and two-arm comparisons.

use rayon::prelude::*;
use serde::Serialize;
use tspopt::{run_ga, run_hc, GaConfig, HcConfig, Instance, Result, RunResult, Scalar, TspError};

use crate::seed::derive_trial_seed;
use crate::stats::{ExperimentStats, TrialRecord};

#[derive(Debug, Clone, PartialEq)]
pub enum Solver {
    Ga(GaConfig),
    Hc(HcConfig),
}

impl Solver {
    pub fn validate(&self) -> Result<()> {
        match self {
            Solver::Ga(config) => config.validate(),
            Solver::Hc(config) => config.validate(),
        }
    }

    /// Runs once with the configured seed replaced by `seed`.
    pub fn run<T: Scalar>(&self, instance: &Instance<T>, seed: u64) -> Result<RunResult<T>> {
        match self {
            Solver::Ga(config) => run_ga(
                instance,
                &GaConfig {
                    seed,
                    ..config.clone()
                },
            ),
            Solver::Hc(config) => run_hc(
                instance,
                &HcConfig {
                    seed,
                    ..config.clone()
                },
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExperimentOptions {
    pub trials: u64,
    pub experiment_seed: u64,
    /// Worker threads; 0 lets the pool decide.
    pub parallelism: usize,
    /// Record per-trial wall time. When off, `wall_time_ms` is 0 so output
    /// depends only on the inputs.
    pub record_timing: bool,
}

impl Default for ExperimentOptions {
    fn default() -> Self {
        ExperimentOptions {
            trials: 100,
            experiment_seed: 0,
            parallelism: 0,
            record_timing: true,
        }
    }
}

fn check(instance_len: usize, solver: &Solver, options: &ExperimentOptions) -> Result<()> {
    solver.validate()?;
    if options.trials == 0 {
        return Err(TspError::Config("trials must be at least 1".into()));
    }
    if instance_len < 2 {
        return Err(TspError::InvalidArgument(format!(
            "solvers need at least 2 locations, got {instance_len}"
        )));
    }
    Ok(())
}

fn with_pool<R: Send>(parallelism: usize, job: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .map_err(|e| TspError::Config(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(job))
}

/// Runs `options.trials` independent trials, trial `k` seeded with
/// [`derive_trial_seed`]`(experiment_seed, k)`.
///
/// Records are ordered by trial id whatever the parallelism. If any trial
/// fails, the error of the lowest failing trial id is returned.
pub fn run_experiment<T: Scalar>(
    instance: &Instance<T>,
    solver: &Solver,
    options: &ExperimentOptions,
) -> Result<ExperimentStats> {
    check(instance.len(), solver, options)?;
    let instance = instance.clone().with_distance_table();
    let outcomes: Vec<Result<TrialRecord>> = with_pool(options.parallelism, || {
        (0..options.trials)
            .into_par_iter()
            .map(|trial_id| {
                let seed = derive_trial_seed(options.experiment_seed, trial_id);
                let run = solver.run(&instance, seed)?;
                Ok(TrialRecord {
                    trial_id,
                    seed,
                    tour_length: run.best_length_f64(),
                    wall_time_ms: if options.record_timing {
                        run.wall_time_ms
                    } else {
                        0.0
                    },
                    fitness_evaluations: run.fitness_evaluations,
                    iterations: run.iterations,
                })
            })
            .collect()
    })?;
    let trials = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(ExperimentStats::from_trials(trials))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub a: ExperimentStats,
    pub b: ExperimentStats,
    /// `mean_b / mean_a`.
    pub mean_ratio: f64,
    /// `(mean_a - mean_b) / mean_a`; positive when arm b is shorter.
    pub improvement: f64,
    /// Ratio of mean fitness evaluations, b over a.
    pub evaluation_ratio: f64,
    /// Ratio of mean wall time, b over a; NaN when timing is off.
    pub wall_time_ratio: f64,
}

/// Runs both arms over the same per-trial seeds, so trial `k` of each arm
/// starts from the same random stream.
pub fn compare<T: Scalar>(
    instance: &Instance<T>,
    solver_a: &Solver,
    solver_b: &Solver,
    options: &ExperimentOptions,
) -> Result<Comparison> {
    check(instance.len(), solver_a, options)?;
    check(instance.len(), solver_b, options)?;
    let a = run_experiment(instance, solver_a, options)?;
    let b = run_experiment(instance, solver_b, options)?;
    let (sa, sb) = (&a.summary, &b.summary);
    Ok(Comparison {
        mean_ratio: sb.mean / sa.mean,
        improvement: (sa.mean - sb.mean) / sa.mean,
        evaluation_ratio: sb.mean_fitness_evaluations / sa.mean_fitness_evaluations,
        wall_time_ratio: if options.record_timing {
            sb.mean_wall_time_ms / sa.mean_wall_time_ms
        } else {
            f64::NAN
        },
        a,
        b,
    })
}

#[cfg(test)]
mod tests {
    use tspopt::{CrossoverVariant, HcVariant, Instance64, Point};

    use super::*;

    fn ring(n: usize) -> Instance64 {
        let points = (0..n)
            .map(|k| {
                let a = k as f64 * 2.4;
                Point::new(a.cos() * (1.0 + k as f64 * 0.1), a.sin())
            })
            .collect();
        Instance64::euclidean("ring", points).unwrap()
    }

    fn options(trials: u64, parallelism: usize) -> ExperimentOptions {
        ExperimentOptions {
            trials,
            experiment_seed: 11,
            parallelism,
            record_timing: false,
        }
    }

    #[test]
    fn records_follow_trial_order_and_seeds() {
        let solver = Solver::Hc(HcConfig::default());
        let stats = run_experiment(&ring(9), &solver, &options(6, 3)).unwrap();
        for (k, t) in stats.trials.iter().enumerate() {
            assert_eq!(t.trial_id, k as u64);
            assert_eq!(t.seed, derive_trial_seed(11, k as u64));
            assert_eq!(t.wall_time_ms, 0.0);
        }
    }

    #[test]
    fn trial_matches_direct_run() {
        let config = GaConfig {
            population_size: 12,
            max_generations: 5,
            ..GaConfig::default()
        };
        let inst = ring(8);
        let stats = run_experiment(&inst, &Solver::Ga(config.clone()), &options(3, 1)).unwrap();
        let seed = derive_trial_seed(11, 2);
        let direct = run_ga(&inst, &GaConfig { seed, ..config }).unwrap();
        assert_eq!(stats.trials[2].tour_length, direct.best_length);
        assert_eq!(
            stats.trials[2].fitness_evaluations,
            direct.fitness_evaluations
        );
    }

    #[test]
    fn identical_arms_show_no_improvement() {
        let solver = Solver::Ga(GaConfig {
            population_size: 10,
            crossover_variant: CrossoverVariant::ReversalInvariant,
            ..GaConfig::default()
        });
        let report = compare(&ring(10), &solver, &solver, &options(8, 2)).unwrap();
        assert_eq!(report.improvement, 0.0);
        assert_eq!(report.mean_ratio, 1.0);
        assert_eq!(report.a, report.b);
    }

    #[test]
    fn config_errors_before_running() {
        let bad = Solver::Ga(GaConfig {
            population_size: 1,
            ..GaConfig::default()
        });
        assert!(matches!(
            run_experiment(&ring(6), &bad, &options(3, 1)),
            Err(TspError::Config(_))
        ));
        let good = Solver::Hc(HcConfig {
            variant: HcVariant::Modified,
            ..HcConfig::default()
        });
        assert!(matches!(
            run_experiment(&ring(6), &good, &options(0, 1)),
            Err(TspError::Config(_))
        ));
    }
}
