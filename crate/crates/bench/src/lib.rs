//! Shared inputs for the benchmarks.

use khinchin_core::{cf_expand, AlgebraicNumber, CFExpansion};

pub fn root(radicand: i64, degree: usize) -> AlgebraicNumber {
    AlgebraicNumber::nth_root(radicand, degree).expect("irrational root")
}

/// `terms` partial quotients of `radicand^(1/degree)` after `b0`.
pub fn expansion(radicand: i64, degree: usize, terms: usize) -> CFExpansion {
    cf_expand(&root(radicand, degree), terms + 1).expect("expansion")
}
