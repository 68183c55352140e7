//! Reference instances bundled with the crate.

use crate::geometry::Instance;
use crate::scalar::Scalar;
use crate::tour::Tour;
use crate::tsplib::{parse_tsplib, TsplibHeader};

/// TSPLIB `att48`: 48 US state capitals (Padberg/Rinaldi).
pub const ATT48_TSPLIB: &str = include_str!("../data/att48.tsp");

/// TSPLIB `att48.opt.tour`, 1-based, terminated by `-1`.
pub const ATT48_OPT_TOUR: &str = include_str!("../data/att48.opt.tour");

/// Optimal att48 tour length in the Euclidean plane, to integer precision.
pub const ATT48_EUCLIDEAN_OPTIMUM: f64 = 33523.0;

/// Optimal att48 tour length under the TSPLIB `ATT` pseudo-Euclidean metric.
pub const ATT48_ATT_OPTIMUM: u64 = 10628;

pub fn att48<T: Scalar>() -> Instance<T> {
    att48_with_header().1
}

pub fn att48_with_header<T: Scalar>() -> (TsplibHeader, Instance<T>) {
    parse_tsplib(ATT48_TSPLIB).expect("bundled att48 parses")
}

/// The published optimal att48 tour, converted to 0-based indices.
pub fn att48_optimal_tour() -> Tour {
    let order = ATT48_OPT_TOUR
        .split("TOUR_SECTION")
        .nth(1)
        .expect("tour section")
        .split_whitespace()
        .map(|tok| tok.parse::<i64>().expect("integer tour entry"))
        .take_while(|&v| v >= 0)
        .map(|v| v as usize - 1)
        .collect();
    Tour::new(order).expect("bundled tour is a permutation")
}
