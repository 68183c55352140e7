//! CSV and JSON renderings of experiment results.
//!
//! CSV holds one row per trial under the header [`CSV_HEADER`], followed by
//! a footer of `# key=value` comment lines carrying the run metadata and
//! summary. JSON holds `metadata`, `trials` and `summary` objects.
//! Floats are written in shortest round-trip form, so parsing the rows back
//! reproduces the recorded values exactly.

use std::io::{self, Write};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Value};
use tspopt::{CrossoverVariant, HcVariant, SelectionScheme};

use crate::experiment::{Comparison, ExperimentOptions, Solver};
use crate::stats::{ExperimentStats, Summary, TrialRecord};

pub const CSV_HEADER: &str =
    "trial_id,seed,tour_length,wall_time_ms,fitness_evaluations,iterations";

/// Describes an experiment's inputs.
///
/// `generated_unix_ms` is the only field that varies between identical
/// invocations; it is left out when timing is off.
#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub instance: String,
    pub locations: usize,
    pub metric: String,
    pub precision: String,
    pub trials: u64,
    pub experiment_seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_unix_ms: Option<u128>,
}

impl Metadata {
    pub fn new(
        instance: &str,
        locations: usize,
        metric: String,
        precision: &str,
        options: &ExperimentOptions,
    ) -> Self {
        let generated_unix_ms = options.record_timing.then(|| {
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_millis())
        });
        Metadata {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            instance: instance.to_string(),
            locations,
            metric,
            precision: precision.to_string(),
            trials: options.trials,
            experiment_seed: options.experiment_seed,
            generated_unix_ms,
        }
    }
}

/// Solver settings as flat `(key, value)` pairs; the seed is omitted since
/// each trial derives its own.
pub fn solver_settings(solver: &Solver) -> Vec<(&'static str, Value)> {
    match solver {
        Solver::Ga(c) => vec![
            ("algorithm", json!("ga")),
            (
                "variant",
                match c.crossover_variant {
                    CrossoverVariant::Baseline => "baseline",
                    CrossoverVariant::ReversalInvariant => "modified",
                }
                .into(),
            ),
            ("population", json!(c.population_size)),
            ("generations", json!(c.max_generations)),
            ("stall", json!(c.max_stall_generations)),
            ("mutation_rate", json!(c.mutation_rate)),
            ("elitism", json!(c.elitism)),
            (
                "selection",
                match c.selection {
                    SelectionScheme::ShiftedRoulette => "shifted",
                    SelectionScheme::LengthProportional => "length-proportional",
                }
                .into(),
            ),
        ],
        Solver::Hc(c) => vec![
            ("algorithm", json!("hc")),
            (
                "variant",
                match c.variant {
                    HcVariant::Baseline => "baseline",
                    HcVariant::Modified => "modified",
                }
                .into(),
            ),
            ("restarts", json!(c.restarts)),
            ("max_steps", json!(c.max_steps_per_run)),
            (
                "allowance",
                json!(format!("{:?}", c.allowance).to_lowercase()),
            ),
        ],
    }
}

fn settings_json(solver: &Solver) -> Value {
    let map: serde_json::Map<String, Value> = solver_settings(solver)
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    Value::Object(map)
}

fn csv_error(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

fn footer_metadata(w: &mut impl Write, meta: &Metadata) -> io::Result<()> {
    writeln!(w, "# tool={} {}", meta.tool, meta.version)?;
    writeln!(w, "# instance={}", meta.instance)?;
    writeln!(w, "# locations={}", meta.locations)?;
    writeln!(w, "# metric={}", meta.metric)?;
    writeln!(w, "# precision={}", meta.precision)?;
    writeln!(w, "# trials={}", meta.trials)?;
    writeln!(w, "# experiment_seed={}", meta.experiment_seed)?;
    if let Some(ms) = meta.generated_unix_ms {
        writeln!(w, "# generated_unix_ms={ms}")?;
    }
    Ok(())
}

fn footer_solver(w: &mut impl Write, prefix: &str, solver: &Solver) -> io::Result<()> {
    for (k, v) in solver_settings(solver) {
        match v {
            Value::String(s) => writeln!(w, "# {prefix}{k}={s}")?,
            other => writeln!(w, "# {prefix}{k}={other}")?,
        }
    }
    Ok(())
}

fn footer_summary(w: &mut impl Write, prefix: &str, s: &Summary) -> io::Result<()> {
    writeln!(w, "# {prefix}count={}", s.count)?;
    writeln!(w, "# {prefix}mean={}", s.mean)?;
    writeln!(w, "# {prefix}std={}", s.std)?;
    writeln!(w, "# {prefix}min={}", s.min)?;
    writeln!(w, "# {prefix}q1={}", s.q1)?;
    writeln!(w, "# {prefix}median={}", s.median)?;
    writeln!(w, "# {prefix}q3={}", s.q3)?;
    writeln!(w, "# {prefix}max={}", s.max)?;
    writeln!(w, "# {prefix}degenerate={}", s.degenerate)?;
    writeln!(w, "# {prefix}mean_wall_time_ms={}", s.mean_wall_time_ms)?;
    writeln!(
        w,
        "# {prefix}mean_fitness_evaluations={}",
        s.mean_fitness_evaluations
    )?;
    writeln!(w, "# {prefix}mean_iterations={}", s.mean_iterations)
}

pub fn write_csv(
    w: &mut impl Write,
    meta: &Metadata,
    solver: &Solver,
    stats: &ExperimentStats,
) -> io::Result<()> {
    let mut rows = csv::Writer::from_writer(&mut *w);
    for t in &stats.trials {
        rows.serialize(t).map_err(csv_error)?;
    }
    rows.flush()?;
    drop(rows);
    writeln!(w, "# summary")?;
    footer_metadata(w, meta)?;
    footer_solver(w, "", solver)?;
    footer_summary(w, "", &stats.summary)
}

/// Rows of both arms, prefixed by an `arm` column holding `a` or `b`.
pub fn write_comparison_csv(
    w: &mut impl Write,
    meta: &Metadata,
    solvers: (&Solver, &Solver),
    report: &Comparison,
) -> io::Result<()> {
    writeln!(w, "arm,{CSV_HEADER}")?;
    let mut rows = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(&mut *w);
    for (arm, stats) in [("a", &report.a), ("b", &report.b)] {
        for trial in &stats.trials {
            rows.serialize((arm, trial)).map_err(csv_error)?;
        }
    }
    rows.flush()?;
    drop(rows);
    writeln!(w, "# summary")?;
    footer_metadata(w, meta)?;
    footer_solver(w, "a.", solvers.0)?;
    footer_solver(w, "b.", solvers.1)?;
    footer_summary(w, "a.", &report.a.summary)?;
    footer_summary(w, "b.", &report.b.summary)?;
    writeln!(w, "# mean_ratio={}", report.mean_ratio)?;
    writeln!(w, "# improvement={}", report.improvement)?;
    writeln!(w, "# evaluation_ratio={}", report.evaluation_ratio)?;
    writeln!(w, "# wall_time_ratio={}", report.wall_time_ratio)
}

fn write_json_value(w: &mut impl Write, value: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, value)?;
    writeln!(w)
}

pub fn write_json(
    w: &mut impl Write,
    meta: &Metadata,
    solver: &Solver,
    stats: &ExperimentStats,
) -> io::Result<()> {
    let value = json!({
        "metadata": meta,
        "solver": settings_json(solver),
        "trials": stats.trials,
        "summary": stats.summary,
    });
    write_json_value(w, &value)
}

pub fn write_comparison_json(
    w: &mut impl Write,
    meta: &Metadata,
    solvers: (&Solver, &Solver),
    report: &Comparison,
) -> io::Result<()> {
    let arm = |solver: &Solver, stats: &ExperimentStats| {
        json!({
            "solver": settings_json(solver),
            "trials": stats.trials,
            "summary": stats.summary,
        })
    };
    let value = json!({
        "metadata": meta,
        "a": arm(solvers.0, &report.a),
        "b": arm(solvers.1, &report.b),
        "mean_ratio": report.mean_ratio,
        "improvement": report.improvement,
        "evaluation_ratio": report.evaluation_ratio,
        "wall_time_ratio": report.wall_time_ratio,
    });
    write_json_value(w, &value)
}

/// Reads the trial rows of a single-experiment CSV, skipping the footer.
pub fn parse_csv_trials(text: &str) -> Result<Vec<TrialRecord>, csv::Error> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
        .deserialize()
        .collect()
}

/// `# key=value` footer entries of a CSV report, in order.
pub fn parse_csv_footer(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.strip_prefix("# "))
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}
