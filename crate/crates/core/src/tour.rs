//! Tours as permutations of location indices, and the transposition
//! neighbourhood over them.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Result, TspError};

/// A closed tour: the order in which the locations `0..n` are visited.
///
/// Always a permutation; every constructor checks it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tour(Vec<usize>);

impl Tour {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &city in &order {
            if city >= n {
                return Err(TspError::InvalidArgument(format!(
                    "city {city} out of range for a tour of {n} locations"
                )));
            }
            if std::mem::replace(&mut seen[city], true) {
                return Err(TspError::InvalidArgument(format!(
                    "city {city} appears twice"
                )));
            }
        }
        Ok(Tour(order))
    }

    /// Visits `0, 1, …, n-1` in order.
    pub fn identity(n: usize) -> Self {
        Tour((0..n).collect())
    }

    /// Uniformly random permutation of `0..n` via a Fisher–Yates shuffle.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        Tour(order)
    }

    pub(crate) fn from_vec_unchecked(order: Vec<usize>) -> Self {
        debug_assert!(
            Tour::new(order.clone()).is_ok(),
            "not a permutation: {order:?}"
        );
        Tour(order)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// The same closed route traversed in the opposite direction.
    pub fn reverse(&self) -> Tour {
        let mut order = self.0.clone();
        order.reverse();
        Tour(order)
    }

    /// Copy of this tour with positions `i < j` swapped.
    pub fn transpose(&self, i: usize, j: usize) -> Result<Tour> {
        if i >= j || j >= self.len() {
            return Err(TspError::InvalidArgument(format!(
                "transposition needs 0 <= i < j < {}, got ({i}, {j})",
                self.len()
            )));
        }
        let mut order = self.0.clone();
        order.swap(i, j);
        Ok(Tour(order))
    }

    /// All `n(n-1)/2` single-transposition neighbours in lexicographic
    /// `(i, j)` order.
    pub fn neighbors(&self) -> Neighbors<'_> {
        Neighbors {
            tour: self,
            pairs: TranspositionPairs::new(self.len()),
        }
    }
}

impl AsRef<[usize]> for Tour {
    fn as_ref(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for Tour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, city) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{city}")?;
        }
        f.write_str("]")
    }
}

/// Position pairs `(i, j)`, `i < j < n`, in lexicographic order.
#[derive(Debug, Clone)]
pub struct TranspositionPairs {
    n: usize,
    i: usize,
    j: usize,
}

impl TranspositionPairs {
    pub fn new(n: usize) -> Self {
        TranspositionPairs { n, i: 0, j: 1 }
    }
}

impl Iterator for TranspositionPairs {
    type Item = (usize, usize);

    fn next(&mut self) -> Option<(usize, usize)> {
        if self.j >= self.n {
            return None;
        }
        let pair = (self.i, self.j);
        self.j += 1;
        if self.j == self.n {
            self.i += 1;
            self.j = self.i + 1;
        }
        Some(pair)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let remaining = if self.j >= self.n {
            0
        } else {
            let rest_of_row = self.n - self.j;
            let later_rows = self.n - self.i - 1;
            rest_of_row + later_rows * (later_rows.saturating_sub(1)) / 2
        };
        (remaining, Some(remaining))
    }
}

impl ExactSizeIterator for TranspositionPairs {}

pub struct Neighbors<'a> {
    tour: &'a Tour,
    pairs: TranspositionPairs,
}

impl Iterator for Neighbors<'_> {
    type Item = Tour;

    fn next(&mut self) -> Option<Tour> {
        let (i, j) = self.pairs.next()?;
        let mut order = self.tour.0.clone();
        order.swap(i, j);
        Some(Tour(order))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.pairs.size_hint()
    }
}

impl ExactSizeIterator for Neighbors<'_> {}
