//! Points, metrics and problem instances.

use std::fmt;
use std::str::FromStr;

use crate::error::{Result, TspError};
use crate::scalar::Scalar;
use crate::tour::Tour;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Distance model between two locations.
///
/// The weighted variants model a picking device whose horizontal and
/// vertical drives run at different speeds: sequentially (Manhattan) or
/// simultaneously (Chebyshev).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Metric<T> {
    #[default]
    Euclidean,
    Manhattan,
    WeightedManhattan {
        wx: T,
        wy: T,
    },
    WeightedChebyshev {
        wx: T,
        wy: T,
    },
}

impl<T: Scalar> Metric<T> {
    pub fn weighted_manhattan(wx: T, wy: T) -> Result<Self> {
        check_weights(wx, wy)?;
        Ok(Metric::WeightedManhattan { wx, wy })
    }

    pub fn weighted_chebyshev(wx: T, wy: T) -> Result<Self> {
        check_weights(wx, wy)?;
        Ok(Metric::WeightedChebyshev { wx, wy })
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Metric::Euclidean | Metric::Manhattan => Ok(()),
            Metric::WeightedManhattan { wx, wy } | Metric::WeightedChebyshev { wx, wy } => {
                check_weights(wx, wy)
            }
        }
    }

    #[inline]
    pub fn distance(&self, a: &Point<T>, b: &Point<T>) -> T {
        let dx = (a.x - b.x).abs();
        let dy = (a.y - b.y).abs();
        match *self {
            Metric::Euclidean => (dx * dx + dy * dy).sqrt(),
            Metric::Manhattan => dx + dy,
            Metric::WeightedManhattan { wx, wy } => wx * dx + wy * dy,
            Metric::WeightedChebyshev { wx, wy } => (wx * dx).max(wy * dy),
        }
    }
}

fn check_weights<T: Scalar>(wx: T, wy: T) -> Result<()> {
    let ok = |w: T| w.is_finite() && w > T::zero();
    if ok(wx) && ok(wy) {
        Ok(())
    } else {
        Err(TspError::InvalidArgument(format!(
            "metric weights must be finite and positive, got ({wx}, {wy})"
        )))
    }
}

impl<T: Scalar> fmt::Display for Metric<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::Euclidean => f.write_str("euclidean"),
            Metric::Manhattan => f.write_str("manhattan"),
            Metric::WeightedManhattan { wx, wy } => write!(f, "wmanhattan:{wx},{wy}"),
            Metric::WeightedChebyshev { wx, wy } => write!(f, "wchebyshev:{wx},{wy}"),
        }
    }
}

/// Parses `euclidean`, `manhattan`, `wmanhattan:wx,wy` or `wchebyshev:wx,wy`.
impl<T: Scalar> FromStr for Metric<T> {
    type Err = TspError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, args) = match s.split_once(':') {
            Some((kind, args)) => (kind, Some(args)),
            None => (s, None),
        };
        let weights = || -> Result<(T, T)> {
            let args = args.ok_or_else(|| {
                TspError::InvalidArgument(format!("metric `{kind}` needs weights `wx,wy`"))
            })?;
            let parsed: Vec<f64> = args
                .split(',')
                .map(|w| w.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| {
                    TspError::InvalidArgument(format!("bad metric weight in `{s}`: {e}"))
                })?;
            match parsed.as_slice() {
                [wx, wy] => Ok((T::from_f64_lossy(*wx), T::from_f64_lossy(*wy))),
                _ => Err(TspError::InvalidArgument(format!(
                    "metric `{kind}` needs exactly two weights, got `{args}`"
                ))),
            }
        };
        match (kind.to_ascii_lowercase().as_str(), args) {
            ("euclidean", None) => Ok(Metric::Euclidean),
            ("manhattan", None) => Ok(Metric::Manhattan),
            ("wmanhattan", _) => {
                let (wx, wy) = weights()?;
                Metric::weighted_manhattan(wx, wy)
            }
            ("wchebyshev", _) => {
                let (wx, wy) = weights()?;
                Metric::weighted_chebyshev(wx, wy)
            }
            _ => Err(TspError::InvalidArgument(format!("unknown metric `{s}`"))),
        }
    }
}

/// A named set of locations together with the metric measuring them.
///
/// Optionally carries a precomputed `n × n` distance table. The table holds
/// exactly the values [`Metric::distance`] returns, so lengths are
/// bit-identical with or without it.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance<T> {
    name: String,
    points: Vec<Point<T>>,
    metric: Metric<T>,
    table: Option<Vec<T>>,
}

impl<T: Scalar> Instance<T> {
    /// Requires at least one point; solvers additionally require two.
    pub fn new(name: impl Into<String>, points: Vec<Point<T>>, metric: Metric<T>) -> Result<Self> {
        if points.is_empty() {
            return Err(TspError::InvalidArgument("instance has no points".into()));
        }
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(TspError::InvalidArgument(format!(
                "point {i} has a non-finite coordinate"
            )));
        }
        metric.validate()?;
        Ok(Instance {
            name: name.into(),
            points,
            metric,
            table: None,
        })
    }

    pub fn euclidean(name: impl Into<String>, points: Vec<Point<T>>) -> Result<Self> {
        Self::new(name, points, Metric::Euclidean)
    }

    pub fn with_distance_table(mut self) -> Self {
        if self.table.is_none() {
            let n = self.len();
            let mut table = Vec::with_capacity(n * n);
            for a in &self.points {
                for b in &self.points {
                    table.push(self.metric.distance(a, b));
                }
            }
            self.table = Some(table);
        }
        self
    }

    pub fn has_distance_table(&self) -> bool {
        self.table.is_some()
    }

    /// Same instance with another metric; drops any distance table.
    pub fn with_metric(self, metric: Metric<T>) -> Result<Self> {
        metric.validate()?;
        Ok(Instance {
            metric,
            table: None,
            ..self
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn points(&self) -> &[Point<T>] {
        &self.points
    }

    pub fn metric(&self) -> Metric<T> {
        self.metric
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> T {
        match &self.table {
            Some(table) => table[i * self.points.len() + j],
            None => self.metric.distance(&self.points[i], &self.points[j]),
        }
    }

    pub(crate) fn require_solvable(&self) -> Result<()> {
        if self.len() < 2 {
            return Err(TspError::InvalidArgument(format!(
                "solvers need at least 2 locations, instance `{}` has {}",
                self.name,
                self.len()
            )));
        }
        Ok(())
    }

    /// Closed tour length, accumulated edge by edge from position 0.
    pub fn tour_length(&self, tour: &Tour) -> Result<T> {
        self.check_tour(tour)?;
        Ok(self.order_length(tour.as_slice()))
    }

    /// Length and fitness (`-length`) of a tour.
    pub fn evaluate(&self, tour: &Tour) -> Result<Fitness<T>> {
        self.tour_length(tour).map(Fitness::from_length)
    }

    /// The `n` edge lengths of a closed tour in position order.
    pub fn edge_lengths(&self, tour: &Tour) -> Result<Vec<T>> {
        self.check_tour(tour)?;
        let order = tour.as_slice();
        let n = order.len();
        Ok((0..n)
            .map(|i| self.distance(order[i], order[(i + 1) % n]))
            .collect())
    }

    /// Tour length summed over the ascending-sorted edge lengths.
    ///
    /// Independent of traversal direction and starting position, bit for bit.
    pub fn sorted_edge_length(&self, tour: &Tour) -> Result<T> {
        let mut edges = self.edge_lengths(tour)?;
        edges.sort_by(|a, b| a.partial_cmp(b).expect("finite edge lengths"));
        Ok(edges.into_iter().fold(T::zero(), |acc, e| acc + e))
    }

    fn check_tour(&self, tour: &Tour) -> Result<()> {
        if tour.len() != self.len() {
            return Err(TspError::InvalidArgument(format!(
                "tour has {} entries, instance `{}` has {} locations",
                tour.len(),
                self.name,
                self.len()
            )));
        }
        Ok(())
    }

    /// Length of a permutation slice already known to match this instance.
    #[inline]
    pub(crate) fn order_length(&self, order: &[usize]) -> T {
        let n = order.len();
        let mut total = T::zero();
        for i in 0..n {
            let next = if i + 1 == n { 0 } else { i + 1 };
            total = total + self.distance(order[i], order[next]);
        }
        total
    }
}

/// Tour length paired with its fitness `-length`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Fitness<T> {
    pub length: T,
}

impl<T: Scalar> Fitness<T> {
    pub fn from_length(length: T) -> Self {
        Fitness { length }
    }

    pub fn fitness(&self) -> T {
        -self.length
    }
}
