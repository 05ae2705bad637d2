//! Kullback-Leibler divergence and chi-square goodness of fit against a
//! coefficient model.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::EmpiricalDistribution;
use crate::distmodel::CoefficientModel;
use crate::error::{invalid, Error, Result};
use crate::numeric::LogBase;

/// `Σ_k P(k)·log2(P(k)/Q(k))` with `P` the observed frequencies and `Q` the
/// model.
pub fn kld(emp: &EmpiricalDistribution, model: &dyn CoefficientModel) -> Result<f64> {
    kld_in(emp, model, LogBase::Two)
}

/// KLD in the given logarithm base (`LogBase::E` gives nats).
pub fn kld_in(
    emp: &EmpiricalDistribution,
    model: &dyn CoefficientModel,
    base: LogBase,
) -> Result<f64> {
    let total = emp.total() as f64;
    let mut sum = 0.0;
    for (&k, &c) in emp.counts() {
        let q = model.pmf(k);
        if !(q > 0.0) {
            return Err(Error::SupportMismatch(k));
        }
        let p = c as f64 / total;
        sum += p * (p / q).ln();
    }
    // Gibbs: the exact value is non-negative; clamp rounding noise.
    Ok(base.from_ln(sum).max(0.0))
}

/// KLD between two explicit distributions on the same cells.
pub fn kld_vectors(p: &[f64], q: &[f64], base: LogBase) -> Result<f64> {
    if p.len() != q.len() {
        return invalid("distributions must have the same number of cells");
    }
    let mut sum = 0.0;
    for (i, (&pi, &qi)) in p.iter().zip(q).enumerate() {
        if pi == 0.0 {
            continue;
        }
        if !(qi > 0.0) {
            return Err(Error::SupportMismatch(i as u64));
        }
        sum += pi * (pi / qi).ln();
    }
    Ok(base.from_ln(sum))
}

/// A closed range of coefficient values; `hi = None` is open-ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bin {
    pub lo: u64,
    pub hi: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Binning {
    bins: Vec<Bin>,
}

impl Binning {
    pub fn new(bins: Vec<Bin>) -> Result<Self> {
        if bins.is_empty() {
            return invalid("no bins given");
        }
        let mut sorted = bins.clone();
        sorted.sort_by_key(|b| b.lo);
        for w in sorted.windows(2) {
            match w[0].hi {
                Some(h) if h < w[1].lo => {}
                _ => return invalid("bins overlap"),
            }
        }
        if bins.iter().any(|b| b.lo == 0 || b.hi.is_some_and(|h| h < b.lo)) {
            return invalid("bins must be non-empty ranges of positive integers");
        }
        Ok(Binning { bins })
    }

    /// One cell per value `1..=singles`, then `[singles+1, ∞)`.
    pub fn singles_with_tail(singles: u64) -> Result<Self> {
        let mut bins: Vec<Bin> = (1..=singles).map(|k| Bin { lo: k, hi: Some(k) }).collect();
        bins.push(Bin {
            lo: singles + 1,
            hi: None,
        });
        Self::new(bins)
    }

    pub fn bins(&self) -> &[Bin] {
        &self.bins
    }
}

impl Default for Binning {
    /// Cells `1..=9` and `10+`.
    fn default() -> Self {
        Self::singles_with_tail(9).expect("valid default binning")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiSquare {
    pub statistic: f64,
    /// `P(χ²_df <= statistic)`: the chance a random sample would not exceed it.
    pub p_value: f64,
    pub df: usize,
}

/// Chi-square statistic of raw observed counts against cell probabilities.
pub fn chi_square_counts(observed: &[f64], probabilities: &[f64]) -> Result<ChiSquare> {
    if observed.is_empty() {
        return invalid("no bins given");
    }
    if observed.len() != probabilities.len() {
        return invalid("observed and expected must have the same length");
    }
    let n: f64 = observed.iter().sum();
    if probabilities.iter().any(|&p| !(n * p > 0.0)) {
        return invalid("every bin needs a positive expected count");
    }
    pearson(observed, probabilities, n)
}

/// Chi-square test of `emp` against `model`, with `df = bins - 1`.
pub fn chi_square(
    emp: &EmpiricalDistribution,
    model: &dyn CoefficientModel,
    binning: &Binning,
) -> Result<ChiSquare> {
    let observed: Vec<f64> = binning
        .bins()
        .iter()
        .map(|b| emp.count_in(b.lo, b.hi) as f64)
        .collect();
    let probs: Vec<f64> = binning
        .bins()
        .iter()
        .map(|b| model.range_mass(b.lo, b.hi))
        .collect();
    let n = emp.total() as f64;
    if probs.iter().any(|&p| n * p < 1.0) {
        return invalid("every bin needs an expected count of at least 1");
    }
    pearson(&observed, &probs, n)
}

fn pearson(observed: &[f64], probs: &[f64], n: f64) -> Result<ChiSquare> {
    let statistic: f64 = observed
        .iter()
        .zip(probs)
        .map(|(&o, &p)| {
            let e = n * p;
            (o - e) * (o - e) / e
        })
        .sum();
    let df = probs.len() - 1;
    let p_value = if df == 0 || statistic <= 0.0 {
        0.0
    } else {
        ChiSquared::new(df as f64)
            .map_err(|e| Error::InvalidInput(e.to_string()))?
            .cdf(statistic)
    };
    Ok(ChiSquare {
        statistic,
        p_value,
        df,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distmodel::{GaussKuzmin, TruncatedGaussKuzmin};

    #[test]
    fn kld_hand_cases() {
        let same = kld_vectors(&[0.25, 0.75], &[0.25, 0.75], LogBase::Two).unwrap();
        assert!(same.abs() < 1e-12);
        let one = kld_vectors(&[1.0, 0.0], &[0.5, 0.5], LogBase::Two).unwrap();
        assert!((one - 1.0).abs() < 1e-12);
        assert!(kld_vectors(&[0.5, 0.5], &[1.0, 0.0], LogBase::Two).is_err());
    }

    #[test]
    fn kld_zero_when_model_matches() {
        // P(1) = P(2) = 1/2 against a truncated model with exactly those masses
        // is not available; use maxn = 1, where the model is a point mass.
        let emp = EmpiricalDistribution::from_values(&[1, 1, 1]).unwrap();
        let model = TruncatedGaussKuzmin::new(1).unwrap();
        assert!(kld(&emp, &model).unwrap().abs() < 1e-12);
    }

    #[test]
    fn kld_support_mismatch() {
        let emp = EmpiricalDistribution::from_values(&[1, 4]).unwrap();
        let model = TruncatedGaussKuzmin::new(3).unwrap();
        assert_eq!(kld(&emp, &model), Err(Error::SupportMismatch(4)));
    }

    #[test]
    fn kld_units() {
        let emp = EmpiricalDistribution::from_values(&[1, 1, 2, 3, 7]).unwrap();
        let bits = kld(&emp, &GaussKuzmin).unwrap();
        let nats = kld_in(&emp, &GaussKuzmin, LogBase::E).unwrap();
        assert!((bits * std::f64::consts::LN_2 - nats).abs() < 1e-14);
    }

    #[test]
    fn chi_square_hand_cases() {
        let exact = chi_square_counts(&[50.0, 50.0], &[0.5, 0.5]).unwrap();
        assert_eq!((exact.statistic, exact.p_value), (0.0, 0.0));
        let c = chi_square_counts(&[60.0, 40.0], &[0.5, 0.5]).unwrap();
        assert!((c.statistic - 4.0).abs() < 1e-12);
        assert_eq!(c.df, 1);
        // P(χ²_1 <= 4) = erf(sqrt 2) ≈ 0.954500
        assert!((c.p_value - 0.954_499_736).abs() < 1e-6);
        assert!(chi_square_counts(&[], &[]).is_err());
    }

    #[test]
    fn chi_square_bin_order_invariant() {
        let emp = EmpiricalDistribution::from_values(&[1, 1, 1, 2, 2, 3, 5, 1, 12, 1, 2, 4]).unwrap();
        let bins = vec![
            Bin { lo: 1, hi: Some(1) },
            Bin { lo: 2, hi: Some(3) },
            Bin { lo: 4, hi: None },
        ];
        let mut reversed = bins.clone();
        reversed.reverse();
        let a = chi_square(&emp, &GaussKuzmin, &Binning::new(bins).unwrap()).unwrap();
        let b = chi_square(&emp, &GaussKuzmin, &Binning::new(reversed).unwrap()).unwrap();
        assert!((a.statistic - b.statistic).abs() < 1e-12);
        assert_eq!(a.p_value, b.p_value);
    }

    #[test]
    fn binning_validation() {
        assert!(Binning::new(vec![]).is_err());
        assert!(Binning::new(vec![Bin { lo: 1, hi: None }, Bin { lo: 3, hi: Some(4) }]).is_err());
        assert!(Binning::new(vec![Bin { lo: 0, hi: Some(1) }]).is_err());
        assert_eq!(Binning::default().bins().len(), 10);
    }
}
