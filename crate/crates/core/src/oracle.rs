//! Exact solvers for small instances, used as ground truth.
//!
//! Both solvers report tours in the same canonical form: starting at
//! location 0, with `order[1] < order[n-1]`. The reported length is always
//! [`Instance::tour_length`] of that tour, so results from the two solvers
//! compare bit for bit.

use crate::error::{Result, TspError};
use crate::geometry::Instance;
use crate::scalar::Scalar;
use crate::tour::Tour;

#[derive(Debug, Clone, PartialEq)]
pub struct ExactResult<T> {
    pub optimal_tour: Tour,
    pub optimal_length: T,
    /// Tours enumerated (brute force) or DP relaxations (Held–Karp).
    pub nodes_expanded: u64,
}

pub const BRUTE_FORCE_MAX: usize = 10;
pub const HELD_KARP_MAX: usize = 18;

fn check_size<T: Scalar>(
    instance: &Instance<T>,
    operation: &'static str,
    max: usize,
) -> Result<()> {
    instance.require_solvable()?;
    if instance.len() > max {
        return Err(TspError::TooLarge {
            operation,
            n: instance.len(),
            max,
        });
    }
    Ok(())
}

/// Rotates to start at 0 and orients so that `order[1] < order[n-1]`.
pub fn canonical(tour: &Tour) -> Tour {
    let order = tour.as_slice();
    let n = order.len();
    if n == 0 {
        return tour.clone();
    }
    let zero = order.iter().position(|&c| c == 0).unwrap_or(0);
    let mut rotated: Vec<usize> = order[zero..]
        .iter()
        .chain(&order[..zero])
        .copied()
        .collect();
    if n > 2 && rotated[1] > rotated[n - 1] {
        rotated[1..].reverse();
    }
    Tour::from_vec_unchecked(rotated)
}

/// Lexicographic successor of `v`; false when `v` is the last permutation.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len())
        .rev()
        .find(|&j| v[j] > v[i])
        .expect("pivot exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Enumerates every distinct closed tour. Ties go to the lexicographically
/// smallest canonical tour.
pub fn brute_force<T: Scalar>(instance: &Instance<T>) -> Result<ExactResult<T>> {
    check_size(instance, "brute_force", BRUTE_FORCE_MAX)?;
    let n = instance.len();
    let mut order: Vec<usize> = (0..n).collect();
    let mut best_order = order.clone();
    let mut best_len = instance.order_length(&order);
    let mut expanded = 1u64;
    while next_permutation(&mut order[1..]) {
        if order[1] > order[n - 1] {
            continue;
        }
        expanded += 1;
        let len = instance.order_length(&order);
        if len < best_len {
            best_len = len;
            best_order.copy_from_slice(&order);
        }
    }
    Ok(ExactResult {
        optimal_tour: Tour::from_vec_unchecked(best_order),
        optimal_length: best_len,
        nodes_expanded: expanded,
    })
}

/// Held–Karp subset dynamic program anchored at location 0.
pub fn held_karp<T: Scalar>(instance: &Instance<T>) -> Result<ExactResult<T>> {
    check_size(instance, "held_karp", HELD_KARP_MAX)?;
    let n = instance.len();
    // Locations 1..n map to bits 0..m.
    let m = n - 1;
    let full = (1usize << m) - 1;
    let mut cost = vec![T::infinity(); (1 << m) * m];
    let mut parent = vec![u8::MAX; (1 << m) * m];
    let at = |mask: usize, j: usize| mask * m + j;
    for j in 0..m {
        cost[at(1 << j, j)] = instance.distance(0, j + 1);
    }
    let mut expanded = 0u64;
    for mask in 1..=full {
        for j in 0..m {
            if mask & (1 << j) == 0 || mask == 1 << j {
                continue;
            }
            let prev = mask ^ (1 << j);
            let mut best = T::infinity();
            let mut best_k = u8::MAX;
            for k in 0..m {
                if prev & (1 << k) == 0 {
                    continue;
                }
                expanded += 1;
                let c = cost[at(prev, k)] + instance.distance(k + 1, j + 1);
                if c < best {
                    best = c;
                    best_k = k as u8;
                }
            }
            cost[at(mask, j)] = best;
            parent[at(mask, j)] = best_k;
        }
    }

    let mut last = 0;
    let mut best = T::infinity();
    for j in 0..m {
        let c = cost[at(full, j)] + instance.distance(j + 1, 0);
        if c < best {
            best = c;
            last = j;
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut mask = full;
    let mut j = last;
    while mask != 0 {
        order.push(j + 1);
        let k = parent[at(mask, j)];
        mask ^= 1 << j;
        j = k as usize;
    }
    order.push(0);
    order.reverse();
    let tour = canonical(&Tour::from_vec_unchecked(order));
    let optimal_length = instance.order_length(tour.as_slice());
    Ok(ExactResult {
        optimal_tour: tour,
        optimal_length,
        nodes_expanded: expanded,
    })
}
