//! Fixed instances shared by the benchmarks.

use defdom_core::graph::{generate, Family, GenSpec};
use defdom_core::Graph;

pub fn instance(family: Family, n: usize, density: f64, seed: u64) -> Graph {
    generate(&GenSpec::new(family, n, density, seed)).expect("valid spec").graph
}
