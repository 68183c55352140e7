//! Steepest-descent hill climbing on the transposition graph.
//!
//! The baseline climber stops at the first tour with no strictly shorter
//! neighbour and relies on random restarts. The modified climber may take a
//! single non-improving step out of such a local minimum, never re-enters a
//! tour it has already visited (in this run or an earlier restart), and
//! gives up immediately when a restart begins on a visited tour.

use std::borrow::Cow;
use std::collections::{HashSet, VecDeque};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, TspError};
use crate::geometry::Instance;
use crate::result::RunResult;
use crate::scalar::Scalar;
use crate::tour::{Tour, TranspositionPairs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum HcVariant {
    #[default]
    Baseline,
    Modified,
}

/// When the modified climber regains its single non-improving move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DownhillAllowance {
    /// Regained once the length drops strictly below the local minimum
    /// that spent it.
    #[default]
    Replenishing,
    /// Spent at most once per run.
    OncePerRun,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HcConfig {
    /// Random starts beyond the first.
    pub restarts: u64,
    pub variant: HcVariant,
    pub max_steps_per_run: u64,
    pub seed: u64,
    pub allowance: DownhillAllowance,
    pub visited_cap: usize,
}

impl Default for HcConfig {
    fn default() -> Self {
        HcConfig {
            restarts: 0,
            variant: HcVariant::Baseline,
            max_steps_per_run: 1_000_000,
            seed: 0,
            allowance: DownhillAllowance::Replenishing,
            visited_cap: VisitedSet::DEFAULT_CAP,
        }
    }
}

impl HcConfig {
    pub fn validate(&self) -> Result<()> {
        if self.visited_cap == 0 {
            return Err(TspError::Config("visited_cap must be at least 1".into()));
        }
        Ok(())
    }
}

/// Exact membership set over tour permutations.
///
/// Holds up to `cap` tours. Once full, further tours go to a small FIFO of
/// recent states instead, so cycle detection keeps working locally.
#[derive(Debug, Clone)]
pub struct VisitedSet {
    states: HashSet<Box<[usize]>>,
    cap: usize,
    recent: VecDeque<Box<[usize]>>,
    recent_set: HashSet<Box<[usize]>>,
}

impl Default for VisitedSet {
    fn default() -> Self {
        VisitedSet::new()
    }
}

impl VisitedSet {
    pub const DEFAULT_CAP: usize = 10_000_000;
    pub const RECENT_CAPACITY: usize = 1024;

    pub fn new() -> Self {
        VisitedSet::with_cap(Self::DEFAULT_CAP)
    }

    pub fn with_cap(cap: usize) -> Self {
        VisitedSet {
            states: HashSet::new(),
            cap,
            recent: VecDeque::new(),
            recent_set: HashSet::new(),
        }
    }

    pub fn contains(&self, order: &[usize]) -> bool {
        self.states.contains(order) || self.recent_set.contains(order)
    }

    /// Returns `false` if the tour was already present.
    pub fn insert(&mut self, order: &[usize]) -> bool {
        if self.contains(order) {
            return false;
        }
        if self.states.len() < self.cap {
            self.states.insert(order.into());
        } else {
            if self.recent.len() == Self::RECENT_CAPACITY {
                if let Some(old) = self.recent.pop_front() {
                    self.recent_set.remove(&old);
                }
            }
            self.recent.push_back(order.into());
            self.recent_set.insert(order.into());
        }
        true
    }

    pub fn len(&self) -> usize {
        self.states.len() + self.recent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_saturated(&self) -> bool {
        self.states.len() >= self.cap
    }
}

/// Best neighbour found by a full neighbourhood scan.
struct ScanResult<T> {
    pair: (usize, usize),
    length: T,
}

/// Scans all transpositions of `order` in lexicographic `(i, j)` order and
/// returns the first shortest one not in `forbidden`. `order` is restored
/// before returning.
fn scan_neighbors<T: Scalar>(
    instance: &Instance<T>,
    order: &mut [usize],
    forbidden: Option<&VisitedSet>,
    evaluations: &mut u64,
) -> Option<ScanResult<T>> {
    let mut best: Option<ScanResult<T>> = None;
    for (i, j) in TranspositionPairs::new(order.len()) {
        order.swap(i, j);
        if !forbidden.is_some_and(|f| f.contains(order)) {
            *evaluations += 1;
            let length = instance.order_length(order);
            if best.as_ref().is_none_or(|b| length < b.length) {
                best = Some(ScanResult {
                    pair: (i, j),
                    length,
                });
            }
        }
        order.swap(i, j);
    }
    best
}

/// The shortest transposition neighbour of `tour` outside `forbidden`,
/// ties going to the lexicographically first pair.
pub fn steepest_step<T: Scalar>(
    instance: &Instance<T>,
    tour: &Tour,
    forbidden: Option<&VisitedSet>,
) -> Result<Option<(Tour, T)>> {
    instance.tour_length(tour)?;
    instance.require_solvable()?;
    let mut order = tour.clone().into_vec();
    let mut evaluations = 0;
    Ok(
        scan_neighbors(instance, &mut order, forbidden, &mut evaluations).map(|found| {
            order.swap(found.pair.0, found.pair.1);
            (Tour::from_vec_unchecked(order), found.length)
        }),
    )
}

/// Kind of move a climber made.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    Improving,
    /// Non-improving step that spent the downhill allowance.
    Downhill,
}

/// Result of a single climb from one start.
#[derive(Debug, Clone, PartialEq)]
pub struct Climb<T> {
    /// Best tour seen during the climb.
    pub tour: Tour,
    pub length: T,
    pub steps: u64,
    /// Neighbour evaluations, excluding the start.
    pub evaluations: u64,
    pub early_out: bool,
    /// Length of every state entered, starting with the start tour.
    pub trajectory: Vec<T>,
    pub moves: Vec<Move>,
}

fn aborted<T: Scalar>(steps: u64, tour: Tour, length: T) -> TspError {
    TspError::RunAborted {
        steps,
        best_tour: tour,
        best_length: length.to_f64_lossy(),
    }
}

/// Plain steepest descent to a local minimum.
pub fn hill_climb_baseline<T: Scalar>(
    instance: &Instance<T>,
    start: &Tour,
    max_steps: u64,
) -> Result<Climb<T>> {
    let mut current_len = instance.tour_length(start)?;
    instance.require_solvable()?;
    let mut order = start.clone().into_vec();
    let mut steps = 0;
    let mut evaluations = 0;
    let mut trajectory = vec![current_len];
    let mut moves = Vec::new();
    while let Some(best) = scan_neighbors(instance, &mut order, None, &mut evaluations) {
        if best.length >= current_len {
            break;
        }
        if steps == max_steps {
            return Err(aborted(steps, Tour::from_vec_unchecked(order), current_len));
        }
        order.swap(best.pair.0, best.pair.1);
        current_len = best.length;
        steps += 1;
        trajectory.push(current_len);
        moves.push(Move::Improving);
    }
    Ok(Climb {
        tour: Tour::from_vec_unchecked(order),
        length: current_len,
        steps,
        evaluations,
        early_out: false,
        trajectory,
        moves,
    })
}

/// Steepest descent with one non-improving escape step and no revisits.
///
/// Every entered tour is recorded in `visited`, which is shared across
/// restarts. Returns immediately with `early_out` set if `start` is
/// already in it.
pub fn hill_climb_modified<T: Scalar>(
    instance: &Instance<T>,
    start: &Tour,
    visited: &mut VisitedSet,
    allowance: DownhillAllowance,
    max_steps: u64,
) -> Result<Climb<T>> {
    let start_len = instance.tour_length(start)?;
    instance.require_solvable()?;
    if visited.contains(start.as_slice()) {
        return Ok(Climb {
            tour: start.clone(),
            length: start_len,
            steps: 0,
            evaluations: 0,
            early_out: true,
            trajectory: vec![start_len],
            moves: Vec::new(),
        });
    }
    visited.insert(start.as_slice());

    let mut order = start.clone().into_vec();
    let mut current_len = start_len;
    let mut best_order = order.clone();
    let mut best_len = start_len;
    let mut can_go_down = true;
    // Length of the local minimum that spent the allowance.
    let mut spent_at: Option<T> = None;
    let mut steps = 0;
    let mut evaluations = 0;
    let mut trajectory = vec![start_len];
    let mut moves = Vec::new();

    while let Some(next) = scan_neighbors(instance, &mut order, Some(visited), &mut evaluations) {
        let kind = if next.length < current_len {
            Move::Improving
        } else if can_go_down {
            Move::Downhill
        } else {
            break;
        };
        if steps == max_steps {
            return Err(aborted(
                steps,
                Tour::from_vec_unchecked(best_order),
                best_len,
            ));
        }
        match kind {
            Move::Improving => {
                if allowance == DownhillAllowance::Replenishing
                    && spent_at.is_some_and(|floor| next.length < floor)
                {
                    can_go_down = true;
                    spent_at = None;
                }
            }
            Move::Downhill => {
                can_go_down = false;
                spent_at = Some(current_len);
            }
        }
        order.swap(next.pair.0, next.pair.1);
        current_len = next.length;
        visited.insert(&order);
        steps += 1;
        trajectory.push(current_len);
        moves.push(kind);
        if current_len < best_len {
            best_len = current_len;
            best_order.copy_from_slice(&order);
        }
    }

    Ok(Climb {
        tour: Tour::from_vec_unchecked(best_order),
        length: best_len,
        steps,
        evaluations,
        early_out: false,
        trajectory,
        moves,
    })
}

/// Hill climbing from `restarts + 1` random starts; returns the best tour
/// over all runs.
///
/// Starts are drawn from one seeded stream, so both variants see the same
/// start tours for the same seed. The modified variant threads one
/// [`VisitedSet`] through every run. Runs that hit the step cap still
/// contribute their best tour; the call fails only if every run aborts.
pub fn run_hc<T: Scalar>(instance: &Instance<T>, config: &HcConfig) -> Result<RunResult<T>> {
    config.validate()?;
    instance.require_solvable()?;
    let started = Instant::now();
    let instance: Cow<'_, Instance<T>> = if instance.has_distance_table() {
        Cow::Borrowed(instance)
    } else {
        Cow::Owned(instance.clone().with_distance_table())
    };
    let instance = instance.as_ref();
    let n = instance.len();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut visited = VisitedSet::with_cap(config.visited_cap);

    let mut best: Option<(Tour, T)> = None;
    let mut last_abort = None;
    let mut steps = 0u64;
    let mut evaluations = 0u64;
    let mut early_outs = 0u64;
    let mut aborted_runs = 0u64;
    let mut history = Vec::new();
    let runs = config.restarts + 1;

    for _ in 0..runs {
        let start = Tour::random(n, &mut rng);
        evaluations += 1;
        let outcome = match config.variant {
            HcVariant::Baseline => hill_climb_baseline(instance, &start, config.max_steps_per_run),
            HcVariant::Modified => hill_climb_modified(
                instance,
                &start,
                &mut visited,
                config.allowance,
                config.max_steps_per_run,
            ),
        };
        let (tour, length) = match outcome {
            Ok(climb) => {
                steps += climb.steps;
                evaluations += climb.evaluations;
                early_outs += u64::from(climb.early_out);
                (climb.tour, climb.length)
            }
            Err(TspError::RunAborted {
                steps: run_steps,
                best_tour,
                best_length,
            }) => {
                aborted_runs += 1;
                steps += run_steps;
                let length = instance.order_length(best_tour.as_slice());
                last_abort = Some(TspError::RunAborted {
                    steps: run_steps,
                    best_tour: best_tour.clone(),
                    best_length,
                });
                (best_tour, length)
            }
            Err(other) => return Err(other),
        };
        if best.as_ref().is_none_or(|(_, b)| length < *b) {
            best = Some((tour, length));
        }
        history.push(best.as_ref().map(|(_, l)| *l).expect("best set"));
    }

    if aborted_runs == runs {
        return Err(last_abort.expect("every run aborted"));
    }
    let (best_tour, best_length) = best.expect("at least one run");
    Ok(RunResult {
        best_tour,
        best_length,
        iterations: steps,
        fitness_evaluations: evaluations,
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
        runs,
        early_outs,
        aborted_runs,
        history,
    })
}
