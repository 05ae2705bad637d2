use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cf::CFExpansion;
use crate::error::{invalid, Result};

/// Occurrence counts of partial quotient values in a finite part of an
/// expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmpiricalDistribution {
    counts: BTreeMap<u64, u64>,
    total: u64,
    maxn: u64,
}

impl EmpiricalDistribution {
    pub fn from_values(values: &[u64]) -> Result<Self> {
        if values.is_empty() {
            return invalid("empirical distribution needs at least one value");
        }
        if values.contains(&0) {
            return invalid("partial quotients must be positive");
        }
        let mut counts = BTreeMap::new();
        for &v in values {
            *counts.entry(v).or_insert(0) += 1;
        }
        let maxn = *counts.keys().next_back().expect("non-empty");
        Ok(EmpiricalDistribution {
            counts,
            total: values.len() as u64,
            maxn,
        })
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    pub fn count(&self, k: u64) -> u64 {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Largest observed value.
    pub fn maxn(&self) -> u64 {
        self.maxn
    }

    pub fn frequency(&self, k: u64) -> f64 {
        self.count(k) as f64 / self.total as f64
    }

    /// Observations in `lo..=hi` (`hi = None` for an open upper end).
    pub fn count_in(&self, lo: u64, hi: Option<u64>) -> u64 {
        match hi {
            Some(h) if h < lo => 0,
            Some(h) => self.counts.range(lo..=h).map(|(_, c)| c).sum(),
            None => self.counts.range(lo..).map(|(_, c)| c).sum(),
        }
    }
}

/// Counts of `b_1..b_n`; `b_0` is never included.
pub fn empirical_dist(cf: &CFExpansion, n: usize) -> Result<EmpiricalDistribution> {
    cf.require(n)?;
    EmpiricalDistribution::from_values(&cf.coeffs[..n])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn small_cases() {
        let cf = CFExpansion::new(7, vec![1, 2, 2, 1]).unwrap();
        let e = empirical_dist(&cf, 4).unwrap();
        assert_eq!(e.count(1), 2);
        assert_eq!(e.count(2), 2);
        assert_eq!((e.total(), e.maxn()), (4, 2));

        let cf = CFExpansion::new(0, vec![5]).unwrap();
        let e = empirical_dist(&cf, 1).unwrap();
        assert_eq!(e.counts().iter().collect::<Vec<_>>(), vec![(&5, &1)]);
        assert_eq!(e.maxn(), 5);
    }

    #[test]
    fn prefix_only() {
        let cf = CFExpansion::new(1, vec![3, 1, 5, 1, 1, 4]).unwrap();
        let e = empirical_dist(&cf, 3).unwrap();
        assert_eq!(e.total(), 3);
        assert_eq!(e.maxn(), 5);
        assert_eq!(e.count_in(2, None), 2);
        assert_eq!(e.count_in(1, Some(1)), 1);
        assert!(matches!(
            empirical_dist(&cf, 7),
            Err(Error::InsufficientExpansion { .. })
        ));
    }
}
