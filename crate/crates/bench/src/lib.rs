//! Shared fixtures for the benchmarks.

use aperylift_core::pairs::{NamedPair, PairName};
use aperylift_core::SolutionSeq;

pub fn solutions(name: PairName, n_max: i64) -> (SolutionSeq, SolutionSeq) {
    NamedPair::get(name).solutions(n_max).expect("built-in pairs propagate")
}
