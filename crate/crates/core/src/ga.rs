//! Generational genetic algorithm over tours.
//!
//! Recombination keeps a random-length prefix of the first parent and fills
//! the remaining locations in the order they appear in the second parent.
//! [`CrossoverVariant::ReversalInvariant`] also recombines with the second
//! parent reversed and keeps the shorter child, so the outcome no longer
//! depends on which direction the mate happens to traverse its route.

use std::borrow::Cow;
use std::time::Instant;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, TspError};
use crate::geometry::Instance;
use crate::result::RunResult;
use crate::scalar::Scalar;
use crate::tour::Tour;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CrossoverVariant {
    #[default]
    Baseline,
    ReversalInvariant,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaConfig {
    pub population_size: usize,
    pub mutation_rate: f64,
    pub max_generations: u64,
    /// Stop after this many generations without a strictly better best-so-far.
    pub max_stall_generations: u64,
    pub crossover_variant: CrossoverVariant,
    pub selection: SelectionScheme,
    /// Carry the previous generation's best member over the worst child.
    pub elitism: bool,
    pub seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 200,
            mutation_rate: 0.1,
            max_generations: 30,
            max_stall_generations: 10,
            crossover_variant: CrossoverVariant::Baseline,
            selection: SelectionScheme::ShiftedRoulette,
            elitism: false,
            seed: 0,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 {
            return Err(TspError::Config(format!(
                "population size must be at least 2, got {}",
                self.population_size
            )));
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return Err(TspError::Config(format!(
                "mutation rate must lie in [0, 1], got {}",
                self.mutation_rate
            )));
        }
        if self.max_generations == 0 {
            return Err(TspError::Config(
                "max_generations must be at least 1".into(),
            ));
        }
        if self.max_stall_generations == 0 {
            return Err(TspError::Config(
                "max_stall_generations must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// A tour together with its cached length.
#[derive(Debug, Clone, PartialEq)]
pub struct Member<T> {
    pub tour: Tour,
    pub length: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Population<T> {
    members: Vec<Member<T>>,
}

impl<T: Scalar> Population<T> {
    pub fn from_members(members: Vec<Member<T>>) -> Result<Self> {
        if members.is_empty() {
            return Err(TspError::InvalidArgument("population is empty".into()));
        }
        Ok(Population { members })
    }

    pub fn members(&self) -> &[Member<T>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// First member of minimum length.
    pub fn best(&self) -> &Member<T> {
        self.members
            .iter()
            .reduce(|best, m| if m.length < best.length { m } else { best })
            .expect("non-empty population")
    }

    fn worst_index(&self) -> usize {
        let mut worst = 0;
        for (k, m) in self.members.iter().enumerate() {
            if m.length > self.members[worst].length {
                worst = k;
            }
        }
        worst
    }
}

/// `population_size` independent uniform tours with their lengths.
pub fn init_population<T: Scalar, R: Rng + ?Sized>(
    instance: &Instance<T>,
    config: &GaConfig,
    rng: &mut R,
) -> Population<T> {
    let n = instance.len();
    let members = (0..config.population_size)
        .map(|_| {
            let tour = Tour::random(n, rng);
            let length = instance.order_length(tour.as_slice());
            Member { tour, length }
        })
        .collect();
    Population { members }
}

/// How parents are weighted for roulette selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SelectionScheme {
    /// Member `k` gets weight `(L_max - len_k) + eps` with
    /// `eps = 1e-9 * L_max`: shorter tours are strictly preferred and a
    /// population of equal lengths is sampled uniformly.
    #[default]
    ShiftedRoulette,
    /// Weight `len_k`. This is what normalising the negative fitness `-len`
    /// by the population total gives, as mlrose does for minimisation
    /// problems; it mildly prefers longer tours.
    LengthProportional,
}

/// Roulette selection over one generation.
#[derive(Debug, Clone)]
pub struct RouletteWheel {
    weights: Vec<f64>,
    index: Option<WeightedIndex<f64>>,
}

impl RouletteWheel {
    pub const EPSILON_FACTOR: f64 = 1e-9;

    pub fn new<T: Scalar>(population: &Population<T>) -> Self {
        Self::with_scheme(population, SelectionScheme::ShiftedRoulette)
    }

    pub fn with_scheme<T: Scalar>(population: &Population<T>, scheme: SelectionScheme) -> Self {
        let lengths: Vec<f64> = population
            .members
            .iter()
            .map(|m| m.length.to_f64_lossy())
            .collect();
        let max = lengths.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let eps = Self::EPSILON_FACTOR * max;
        let weights: Vec<f64> = match scheme {
            SelectionScheme::ShiftedRoulette => lengths.iter().map(|&l| (max - l) + eps).collect(),
            SelectionScheme::LengthProportional => lengths,
        };
        // All-zero weights only arise when every tour has length zero.
        let index = WeightedIndex::new(&weights).ok();
        RouletteWheel { weights, index }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        match &self.index {
            Some(index) => index.sample(rng),
            None => rng.gen_range(0..self.weights.len()),
        }
    }
}

/// Draws one parent by roulette selection.
pub fn select_parent<'p, T: Scalar, R: Rng + ?Sized>(
    population: &'p Population<T>,
    rng: &mut R,
) -> &'p Tour {
    let k = RouletteWheel::new(population).sample(rng);
    &population.members[k].tour
}

fn check_parents(p1: &Tour, p2: &Tour, split: usize) -> Result<()> {
    let n = p1.len();
    if p2.len() != n {
        return Err(TspError::InvalidArgument(format!(
            "parents differ in length: {} vs {}",
            n,
            p2.len()
        )));
    }
    if split == 0 || split >= n {
        return Err(TspError::InvalidArgument(format!(
            "split must lie in 1..={}, got {split}",
            n.saturating_sub(1)
        )));
    }
    Ok(())
}

fn prefix_fill<'a>(p1: &[usize], mate: impl Iterator<Item = &'a usize>, split: usize) -> Tour {
    let n = p1.len();
    let mut taken = vec![false; n];
    let mut child = Vec::with_capacity(n);
    for &city in &p1[..split] {
        taken[city] = true;
        child.push(city);
    }
    child.extend(mate.filter(|&&city| !taken[city]).copied());
    Tour::from_vec_unchecked(child)
}

/// `p1[..split]` followed by the remaining cities in `p2`'s order.
pub fn crossover_baseline(p1: &Tour, p2: &Tour, split: usize) -> Result<Tour> {
    check_parents(p1, p2, split)?;
    Ok(prefix_fill(p1.as_slice(), p2.as_slice().iter(), split))
}

/// The shorter of `crossover_baseline(p1, p2, split)` and
/// `crossover_baseline(p1, reverse(p2), split)`, with its length.
///
/// Ties keep the child built from the unreversed mate. Costs exactly two
/// length evaluations.
pub fn crossover_reversal_invariant<T: Scalar>(
    p1: &Tour,
    p2: &Tour,
    split: usize,
    instance: &Instance<T>,
) -> Result<(Tour, T)> {
    check_parents(p1, p2, split)?;
    if p1.len() != instance.len() {
        return Err(TspError::InvalidArgument(format!(
            "parents have {} entries, instance has {} locations",
            p1.len(),
            instance.len()
        )));
    }
    let forward = prefix_fill(p1.as_slice(), p2.as_slice().iter(), split);
    let backward = prefix_fill(p1.as_slice(), p2.as_slice().iter().rev(), split);
    let forward_len = instance.order_length(forward.as_slice());
    let backward_len = instance.order_length(backward.as_slice());
    if backward_len < forward_len {
        Ok((backward, backward_len))
    } else {
        Ok((forward, forward_len))
    }
}

/// Uniform position pair `i < j`.
fn random_pair<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (usize, usize) {
    let a = rng.gen_range(0..n);
    let mut b = rng.gen_range(0..n - 1);
    if b >= a {
        b += 1;
    }
    (a.min(b), a.max(b))
}

fn mutate_in_place<R: Rng + ?Sized>(order: &mut [usize], rate: f64, rng: &mut R) -> bool {
    if order.len() < 2 || !rng.gen_bool(rate) {
        return false;
    }
    let (i, j) = random_pair(order.len(), rng);
    order.swap(i, j);
    true
}

/// With probability `rate`, swaps one uniformly random pair of positions.
pub fn mutate<R: Rng + ?Sized>(tour: &Tour, rate: f64, rng: &mut R) -> Result<Tour> {
    if !(0.0..=1.0).contains(&rate) {
        return Err(TspError::InvalidArgument(format!(
            "mutation rate must lie in [0, 1], got {rate}"
        )));
    }
    let mut order = tour.clone().into_vec();
    mutate_in_place(&mut order, rate, rng);
    Ok(Tour::from_vec_unchecked(order))
}

/// Runs the genetic algorithm to completion.
///
/// Each generation breeds `population_size` children (two roulette-selected
/// parents, crossover at a uniform split, mutation) which replace the
/// population. The best tour of any generation is returned.
pub fn run_ga<T: Scalar>(instance: &Instance<T>, config: &GaConfig) -> Result<RunResult<T>> {
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

    let mut population = init_population(instance, config, &mut rng);
    let mut evaluations = config.population_size as u64;
    let mut best = population.best().clone();
    let mut history = Vec::new();
    let mut generations = 0u64;
    let mut stall = 0u64;

    while generations < config.max_generations && stall < config.max_stall_generations {
        let wheel = RouletteWheel::with_scheme(&population, config.selection);
        let mut offspring = Vec::with_capacity(config.population_size);
        for _ in 0..config.population_size {
            let p1 = &population.members[wheel.sample(&mut rng)].tour;
            let p2 = &population.members[wheel.sample(&mut rng)].tour;
            let split = rng.gen_range(1..n);
            let (child, known_length) = match config.crossover_variant {
                CrossoverVariant::Baseline => (crossover_baseline(p1, p2, split)?, None),
                CrossoverVariant::ReversalInvariant => {
                    evaluations += 2;
                    let (child, length) = crossover_reversal_invariant(p1, p2, split, instance)?;
                    (child, Some(length))
                }
            };
            let mut order = child.into_vec();
            let mutated = mutate_in_place(&mut order, config.mutation_rate, &mut rng);
            let length = match known_length {
                Some(length) if !mutated => length,
                _ => {
                    evaluations += 1;
                    instance.order_length(&order)
                }
            };
            offspring.push(Member {
                tour: Tour::from_vec_unchecked(order),
                length,
            });
        }
        let mut next = Population { members: offspring };
        if config.elitism {
            let worst = next.worst_index();
            next.members[worst] = population.best().clone();
        }
        population = next;
        generations += 1;

        let generation_best = population.best();
        if generation_best.length < best.length {
            best = generation_best.clone();
            stall = 0;
        } else {
            stall += 1;
        }
        history.push(best.length);
    }

    Ok(RunResult {
        best_tour: best.tour,
        best_length: best.length,
        iterations: generations,
        fitness_evaluations: evaluations,
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
        runs: 1,
        early_outs: 0,
        aborted_runs: 0,
        history,
    })
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;
    use rand::Rng;

    use super::*;
    use crate::geometry::Point;

    fn t(v: &[usize]) -> Tour {
        Tour::new(v.to_vec()).unwrap()
    }

    fn circle(n: usize) -> Instance<f64> {
        let pts = (0..n)
            .map(|k| {
                let a = k as f64 / n as f64 * std::f64::consts::TAU;
                Point::new(a.cos(), a.sin())
            })
            .collect();
        Instance::euclidean("circle", pts).unwrap()
    }

    fn random_instance(n: usize, seed: u64) -> Instance<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = (0..n)
            .map(|_| Point::new(rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0)))
            .collect();
        Instance::euclidean("random", pts).unwrap()
    }

    fn population_of(lengths: &[f64]) -> Population<f64> {
        Population::from_members(
            lengths
                .iter()
                .map(|&length| Member {
                    tour: Tour::identity(3),
                    length,
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn config_validation() {
        let ok = GaConfig::default();
        assert!(ok.validate().is_ok());
        for bad in [
            GaConfig {
                population_size: 1,
                ..ok.clone()
            },
            GaConfig {
                mutation_rate: 1.5,
                ..ok.clone()
            },
            GaConfig {
                mutation_rate: f64::NAN,
                ..ok.clone()
            },
            GaConfig {
                max_generations: 0,
                ..ok.clone()
            },
            GaConfig {
                max_stall_generations: 0,
                ..ok.clone()
            },
        ] {
            assert!(matches!(bad.validate(), Err(TspError::Config(_))));
            assert!(matches!(run_ga(&circle(5), &bad), Err(TspError::Config(_))));
        }
    }

    #[test]
    fn run_needs_two_locations() {
        let one = Instance::euclidean("one", vec![Point::new(0.0, 0.0)]).unwrap();
        assert!(run_ga(&one, &GaConfig::default()).is_err());
    }

    #[test]
    fn init_population_is_valid_and_deterministic() {
        let inst = circle(4);
        let config = GaConfig {
            population_size: 5,
            ..GaConfig::default()
        };
        let a = init_population(&inst, &config, &mut ChaCha8Rng::seed_from_u64(1));
        let b = init_population(&inst, &config, &mut ChaCha8Rng::seed_from_u64(1));
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
        for m in a.members() {
            assert!(Tour::new(m.tour.as_slice().to_vec()).is_ok());
            assert_eq!(m.length, inst.tour_length(&m.tour).unwrap());
        }
    }

    #[test]
    fn roulette_weights() {
        let wheel = RouletteWheel::new(&population_of(&[10.0, 30.0]));
        let eps = 30.0 * RouletteWheel::EPSILON_FACTOR;
        assert_eq!(wheel.weights(), &[20.0 + eps, eps]);

        let same = RouletteWheel::new(&population_of(&[7.0; 4]));
        assert!(same.weights().iter().all(|&w| w == same.weights()[0]));
    }

    #[test]
    fn length_proportional_weights() {
        let wheel = RouletteWheel::with_scheme(
            &population_of(&[10.0, 30.0]),
            SelectionScheme::LengthProportional,
        );
        assert_eq!(wheel.weights(), &[10.0, 30.0]);
    }

    #[test]
    fn roulette_on_equal_lengths_is_uniform() {
        let pop = population_of(&[5.0; 4]);
        let wheel = RouletteWheel::new(&pop);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut counts = [0usize; 4];
        for _ in 0..40_000 {
            counts[wheel.sample(&mut rng)] += 1;
        }
        for c in counts {
            assert!((c as f64 / 40_000.0 - 0.25).abs() < 0.02, "{counts:?}");
        }
    }

    #[test]
    fn roulette_frequencies_match_weights() {
        let pop = population_of(&[10.0, 12.0, 15.0, 20.0, 31.0]);
        let wheel = RouletteWheel::new(&pop);
        let total: f64 = wheel.weights().iter().sum();
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let draws = 100_000;
        let mut counts = [0usize; 5];
        for _ in 0..draws {
            counts[wheel.sample(&mut rng)] += 1;
        }
        for (k, &c) in counts.iter().enumerate() {
            let expected = wheel.weights()[k] / total;
            let observed = c as f64 / draws as f64;
            assert!(
                (observed - expected).abs() <= 0.02,
                "member {k}: {observed} vs {expected}"
            );
        }
    }

    #[test]
    fn roulette_with_all_zero_lengths_falls_back_to_uniform() {
        let pop = population_of(&[0.0, 0.0, 0.0]);
        let wheel = RouletteWheel::new(&pop);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let picked: std::collections::HashSet<usize> =
            (0..200).map(|_| wheel.sample(&mut rng)).collect();
        assert_eq!(picked.len(), 3);
        let _ = select_parent(&pop, &mut rng);
    }

    #[test]
    fn baseline_crossover_on_reversed_mate() {
        let p1 = Tour::identity(8);
        let p2 = p1.reverse();
        assert_eq!(
            crossover_baseline(&p1, &p2, 4).unwrap(),
            t(&[0, 1, 2, 3, 7, 6, 5, 4])
        );
    }

    #[test]
    fn baseline_crossover_edge_cases() {
        let p = t(&[3, 0, 4, 1, 2]);
        for split in 1..5 {
            assert_eq!(crossover_baseline(&p, &p, split).unwrap(), p);
        }
        let q = t(&[4, 3, 2, 1, 0]);
        assert_eq!(crossover_baseline(&p, &q, 4).unwrap(), p);
        assert!(crossover_baseline(&p, &q, 0).is_err());
        assert!(crossover_baseline(&p, &q, 5).is_err());
        assert!(crossover_baseline(&p, &Tour::identity(4), 2).is_err());
    }

    #[test]
    fn reversal_invariant_crossover_recovers_optimum() {
        // Points on a circle in index order: identity is optimal.
        let inst = circle(8);
        let p1 = Tour::identity(8);
        let p2 = p1.reverse();
        let optimum = inst.tour_length(&p1).unwrap();
        let optimum_edges = inst.sorted_edge_length(&p1).unwrap();
        for split in 1..8 {
            let (child, len) = crossover_reversal_invariant(&p1, &p2, split, &inst).unwrap();
            // split = 1 ties p1 with its own reversal; either is optimal.
            if split > 1 {
                assert_eq!(child, p1);
                assert_eq!(len, optimum);
            }
            assert_eq!(inst.sorted_edge_length(&child).unwrap(), optimum_edges);
            let baseline = crossover_baseline(&p1, &p2, split).unwrap();
            assert!(inst.sorted_edge_length(&baseline).unwrap() >= optimum_edges);
        }
    }

    #[test]
    fn reversal_invariant_with_identical_parents() {
        let inst = random_instance(9, 4);
        let p = Tour::random(9, &mut ChaCha8Rng::seed_from_u64(5));
        for split in 1..9 {
            let (_, len) = crossover_reversal_invariant(&p, &p, split, &inst).unwrap();
            let rev_child = crossover_baseline(&p, &p.reverse(), split).unwrap();
            assert!(len <= inst.tour_length(&rev_child).unwrap());
            assert!(len <= inst.tour_length(&p).unwrap());
        }
    }

    #[test]
    fn reversal_invariant_is_min_of_both_children() {
        let inst = random_instance(10, 10);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let p1 = Tour::random(10, &mut rng);
            let p2 = Tour::random(10, &mut rng);
            let split = rng.gen_range(1..10);
            let (child, len) = crossover_reversal_invariant(&p1, &p2, split, &inst).unwrap();
            // Direct recomputation: build both children by hand.
            let prefix = &p1.as_slice()[..split];
            let fill = |mate: Vec<usize>| {
                let mut v = prefix.to_vec();
                v.extend(mate.into_iter().filter(|c| !prefix.contains(c)));
                Tour::new(v).unwrap()
            };
            let pi3 = fill(p2.as_slice().to_vec());
            let pi4 = fill(p2.as_slice().iter().rev().copied().collect());
            let l3 = inst.tour_length(&pi3).unwrap();
            let l4 = inst.tour_length(&pi4).unwrap();
            assert_eq!(len, l3.min(l4));
            assert_eq!(child, if l4 < l3 { pi4 } else { pi3 });
            assert_eq!(inst.tour_length(&child).unwrap(), len);
        }
    }

    #[test]
    fn mutation_rates() {
        let tour = Tour::identity(12);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..1000 {
            assert_eq!(mutate(&tour, 0.0, &mut rng).unwrap(), tour);
        }
        for _ in 0..1000 {
            let m = mutate(&tour, 1.0, &mut rng).unwrap();
            let moved = (0..12).filter(|&k| m.as_slice()[k] != k).count();
            assert_eq!(moved, 2);
        }
        let trials = 10_000;
        let changed = (0..trials)
            .filter(|_| mutate(&tour, 0.5, &mut rng).unwrap() != tour)
            .count();
        assert!((changed as f64 / trials as f64 - 0.5).abs() <= 0.02);
        assert!(mutate(&tour, -0.1, &mut rng).is_err());
    }

    #[test]
    fn random_pairs_cover_all_pairs_uniformly() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut counts = [[0usize; 4]; 4];
        for _ in 0..60_000 {
            let (i, j) = random_pair(4, &mut rng);
            assert!(i < j && j < 4);
            counts[i][j] += 1;
        }
        for (i, row) in counts.iter().enumerate() {
            for &count in &row[i + 1..] {
                assert!((count as f64 / 60_000.0 - 1.0 / 6.0).abs() < 0.01);
            }
        }
    }

    #[test]
    fn solves_the_unit_square() {
        // Exhaustive oracle: the three distinct closed tours of a square have
        // lengths 4, 2+2√2, 2+2√2, so the optimum is 4.
        let inst = Instance::euclidean(
            "square",
            vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(1.0, 1.0),
                Point::new(0.0, 1.0),
            ],
        )
        .unwrap();
        for seed in 0..10 {
            let config = GaConfig {
                population_size: 20,
                max_generations: 30,
                mutation_rate: 0.0,
                crossover_variant: CrossoverVariant::ReversalInvariant,
                seed,
                ..GaConfig::default()
            };
            let result = run_ga(&inst, &config).unwrap();
            assert_eq!(result.best_length, 4.0);
            assert_eq!(inst.tour_length(&result.best_tour).unwrap(), 4.0);
        }
    }

    #[test]
    fn evaluation_accounting() {
        let inst = random_instance(15, 3);
        let base = GaConfig {
            population_size: 30,
            max_generations: 12,
            max_stall_generations: 1000,
            mutation_rate: 0.0,
            seed: 9,
            ..GaConfig::default()
        };
        let b = run_ga(&inst, &base).unwrap();
        let ri = run_ga(
            &inst,
            &GaConfig {
                crossover_variant: CrossoverVariant::ReversalInvariant,
                ..base.clone()
            },
        )
        .unwrap();
        assert_eq!(b.iterations, 12);
        assert_eq!(b.fitness_evaluations, 30 + 12 * 30);
        assert_eq!(ri.fitness_evaluations, 30 + 12 * 60);
    }

    #[test]
    fn stall_cutoff_stops_early() {
        let inst = circle(6);
        let config = GaConfig {
            population_size: 50,
            max_generations: 1000,
            max_stall_generations: 3,
            crossover_variant: CrossoverVariant::ReversalInvariant,
            seed: 1,
            ..GaConfig::default()
        };
        let result = run_ga(&inst, &config).unwrap();
        assert!(result.iterations < 1000);
        let h = &result.history;
        assert!(h.len() >= 3);
        assert!(h[h.len() - 3..].iter().all(|&l| l == result.best_length));
    }

    #[test]
    fn elitism_keeps_the_incumbent() {
        let inst = random_instance(12, 21);
        let config = GaConfig {
            population_size: 10,
            max_generations: 20,
            max_stall_generations: 100,
            mutation_rate: 0.3,
            elitism: true,
            seed: 4,
            ..GaConfig::default()
        };
        let result = run_ga(&inst, &config).unwrap();
        assert_eq!(
            inst.tour_length(&result.best_tour).unwrap(),
            result.best_length
        );
    }

    #[test]
    fn works_in_single_precision() {
        let inst = crate::datasets::att48::<f32>();
        let config = GaConfig {
            population_size: 20,
            max_generations: 5,
            crossover_variant: CrossoverVariant::ReversalInvariant,
            ..GaConfig::default()
        };
        let result = run_ga(&inst, &config).unwrap();
        assert_eq!(
            inst.tour_length(&result.best_tour).unwrap(),
            result.best_length
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn mate_direction_does_not_matter(seed in any::<u64>(), n in 3usize..20) {
            let inst = random_instance(n, seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xABCD);
            let p1 = Tour::random(n, &mut rng);
            let p2 = Tour::random(n, &mut rng);
            let split = rng.gen_range(1..n);
            let (_, a) = crossover_reversal_invariant(&p1, &p2, split, &inst).unwrap();
            let (_, b) = crossover_reversal_invariant(&p1, &p2.reverse(), split, &inst).unwrap();
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }

        #[test]
        fn run_is_deterministic_and_monotone(seed in any::<u64>(), ri in any::<bool>(), elitism in any::<bool>()) {
            let inst = random_instance(9, seed);
            let config = GaConfig {
                population_size: 12,
                max_generations: 15,
                mutation_rate: 0.2,
                elitism,
                crossover_variant: if ri { CrossoverVariant::ReversalInvariant } else { CrossoverVariant::Baseline },
                seed,
                ..GaConfig::default()
            };
            let a = run_ga(&inst, &config).unwrap();
            let b = run_ga(&inst, &config).unwrap();
            prop_assert_eq!(&a.best_tour, &b.best_tour);
            prop_assert_eq!(a.best_length.to_bits(), b.best_length.to_bits());
            prop_assert!(a.history.windows(2).all(|w| w[1] <= w[0]));
            prop_assert_eq!(inst.tour_length(&a.best_tour).unwrap(), a.best_length);
        }
    }
}
