//! Gauss-Kuzmin probability models for partial quotients.
//!
//! The standard law gives `P(k) = -log2(1 - 1/(k+1)^2)` over all positive
//! integers. The truncated law keeps only `k <= maxn` and renormalises by the
//! partial sum `1 - log2((maxn+2)/(maxn+1))`, which is exact by telescoping.

use std::f64::consts::LN_2;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::numeric::compensated_sum;

/// A probability mass function on the positive integers.
pub trait CoefficientModel {
    /// `P(k)`; zero outside the support. `k` must be at least 1.
    fn pmf(&self, k: u64) -> f64;

    /// Probability of the closed range `lo..=hi`, or `lo..` when `hi` is `None`.
    fn range_mass(&self, lo: u64, hi: Option<u64>) -> f64;

    fn label(&self) -> String;
}

/// The standard Gauss-Kuzmin distribution.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussKuzmin;

/// Gauss-Kuzmin restricted to `1..=maxn` and renormalised.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedGaussKuzmin {
    maxn: u64,
}

/// `log2(1 + x)` accurate for small `x`.
fn log2_1p(x: f64) -> f64 {
    x.ln_1p() / LN_2
}

/// Unchecked `-log2(1 - 1/(k+1)^2) = log2(1 + 1/(k(k+2)))`.
fn gk_mass(k: u64) -> f64 {
    let k = k as f64;
    log2_1p(1.0 / (k * (k + 2.0)))
}

/// `P(K <= m) = 1 - log2((m+2)/(m+1))`
fn gk_partial_sum(m: u64) -> f64 {
    1.0 - log2_1p(1.0 / (m as f64 + 1.0))
}

pub fn gk_pmf(k: u64) -> Result<f64> {
    if k < 1 {
        return invalid("k must be at least 1");
    }
    Ok(gk_mass(k))
}

/// Limiting distribution function `log2(1 + s)` of the tails `x_n`.
pub fn gk_cdf(s: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&s) {
        return invalid(format!("s must lie in [0, 1], got {s}"));
    }
    Ok(log2_1p(s))
}

pub fn trunc_pmf(k: u64, maxn: u64) -> Result<f64> {
    if k < 1 || maxn < 1 {
        return invalid("k and maxn must be at least 1");
    }
    Ok(TruncatedGaussKuzmin { maxn }.pmf(k))
}

impl CoefficientModel for GaussKuzmin {
    fn pmf(&self, k: u64) -> f64 {
        if k == 0 {
            0.0
        } else {
            gk_mass(k)
        }
    }

    fn range_mass(&self, lo: u64, hi: Option<u64>) -> f64 {
        let lo = lo.max(1);
        let below = if lo == 1 { 0.0 } else { gk_partial_sum(lo - 1) };
        match hi {
            Some(h) if h < lo => 0.0,
            Some(h) => gk_partial_sum(h) - below,
            None => 1.0 - below,
        }
    }

    fn label(&self) -> String {
        "gk".into()
    }
}

impl TruncatedGaussKuzmin {
    pub fn new(maxn: u64) -> Result<Self> {
        if maxn < 1 {
            return invalid("maxn must be at least 1");
        }
        Ok(TruncatedGaussKuzmin { maxn })
    }

    pub fn maxn(&self) -> u64 {
        self.maxn
    }

    pub fn normalizer(&self) -> f64 {
        gk_partial_sum(self.maxn)
    }
}

impl CoefficientModel for TruncatedGaussKuzmin {
    fn pmf(&self, k: u64) -> f64 {
        if k == 0 || k > self.maxn {
            0.0
        } else {
            gk_mass(k) / self.normalizer()
        }
    }

    fn range_mass(&self, lo: u64, hi: Option<u64>) -> f64 {
        let hi = hi.map_or(self.maxn, |h| h.min(self.maxn));
        if lo > hi {
            return 0.0;
        }
        GaussKuzmin.range_mass(lo, Some(hi)) / self.normalizer()
    }

    fn label(&self) -> String {
        format!("gkt({})", self.maxn)
    }
}

/// `Σ_{k=2..m} P(k)·log2(k)` under the untruncated law, extended
/// incrementally.
struct WeightedLogSum {
    upto: u64,
    terms: Vec<f64>,
}

impl WeightedLogSum {
    fn new() -> Self {
        WeightedLogSum {
            upto: 1,
            terms: Vec::new(),
        }
    }

    fn extend_to(&mut self, m: u64) -> f64 {
        if m > self.upto {
            let chunk = ((self.upto + 1)..=m).map(|k| gk_mass(k) * (k as f64).log2());
            self.terms.push(compensated_sum(chunk));
            self.upto = m;
        }
        compensated_sum(self.terms.iter().copied())
    }
}

/// `KC(maxn) = Π_{k=2..maxn} k^{P_trunc(k)}`, with `KC(1) = 1`.
pub fn kc_value(maxn: u64) -> Result<f64> {
    if maxn < 1 {
        return invalid("maxn must be at least 1");
    }
    let mut sum = WeightedLogSum::new();
    Ok(kc_from_sum(sum.extend_to(maxn), maxn))
}

fn kc_from_sum(weighted: f64, maxn: u64) -> f64 {
    (weighted / gk_partial_sum(maxn)).exp2()
}

/// Limit of `KC(M)`: doubles `M` until successive values differ by less
/// than `tolerance`.
pub fn khinchin_constant(tolerance: f64) -> Result<f64> {
    if !(tolerance > 0.0) {
        return invalid("tolerance must be positive");
    }
    let mut sum = WeightedLogSum::new();
    let mut m = 1u64;
    let mut prev = 1.0;
    loop {
        m *= 2;
        let kc = kc_from_sum(sum.extend_to(m), m);
        if (kc - prev).abs() < tolerance {
            return Ok(kc);
        }
        prev = kc;
    }
}

/// `khinchin_constant(1e-6)`, computed once.
pub fn khinchin_constant_reference() -> f64 {
    static K0: OnceLock<f64> = OnceLock::new();
    *K0.get_or_init(|| khinchin_constant(1e-6).expect("positive tolerance"))
}

/// Model selector used in reports and configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    /// Standard Gauss-Kuzmin.
    Gk,
    /// Truncated at the observed maximum.
    Truncated,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert!((gk_pmf(1).unwrap() - (4.0f64 / 3.0).log2()).abs() < 1e-15);
        assert!((gk_pmf(2).unwrap() - (9.0f64 / 8.0).log2()).abs() < 1e-15);
        assert!((gk_pmf(1).unwrap() - 0.415037).abs() < 1e-6);
        assert!((gk_pmf(2).unwrap() - 0.169925).abs() < 1e-6);
        assert!(gk_pmf(0).is_err());
    }

    #[test]
    fn telescoping_partial_sums() {
        for m in [1u64, 10, 1000] {
            let direct = compensated_sum((1..=m).map(|k| gk_pmf(k).unwrap()));
            let closed = 1.0 - ((m as f64 + 2.0) / (m as f64 + 1.0)).log2();
            assert!((direct - closed).abs() < 1e-12, "M = {m}");
        }
    }

    #[test]
    fn cdf_values() {
        assert_eq!(gk_cdf(0.0).unwrap(), 0.0);
        assert_eq!(gk_cdf(1.0).unwrap(), 1.0);
        assert!((gk_cdf(1.0 / 3.0).unwrap() - 0.415037).abs() < 1e-6);
        assert!(gk_cdf(-0.1).is_err());
        assert!(gk_cdf(1.5).is_err());
        assert!(gk_cdf(f64::NAN).is_err());
    }

    #[test]
    fn truncated_examples() {
        assert!((trunc_pmf(1, 1).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(trunc_pmf(2, 1).unwrap(), 0.0);
        for maxn in [1u64, 5, 100, 10_000] {
            let s = compensated_sum((1..=maxn).map(|k| trunc_pmf(k, maxn).unwrap()));
            assert!((s - 1.0).abs() < 1e-12, "maxn = {maxn}");
        }
        assert!(trunc_pmf(0, 3).is_err());
        assert!(trunc_pmf(1, 0).is_err());
    }

    #[test]
    fn truncation_inflates_support() {
        for maxn in [1u64, 2, 7, 300] {
            for k in 1..=maxn {
                assert!(trunc_pmf(k, maxn).unwrap() > gk_pmf(k).unwrap());
            }
        }
    }

    #[test]
    fn range_masses() {
        let gk = GaussKuzmin;
        let total = gk.range_mass(1, Some(9)) + gk.range_mass(10, None);
        assert!((total - 1.0).abs() < 1e-15);
        assert!((gk.range_mass(3, Some(3)) - gk_pmf(3).unwrap()).abs() < 1e-15);
        let t = TruncatedGaussKuzmin::new(12).unwrap();
        assert!((t.range_mass(1, Some(9)) + t.range_mass(10, None) - 1.0).abs() < 1e-14);
        assert_eq!(t.range_mass(13, None), 0.0);
    }

    #[test]
    fn kc_small_values() {
        assert_eq!(kc_value(1).unwrap(), 1.0);
        // p2 = log2(9/8) / (1 - log2(4/3)) ≈ 0.29049, KC(2) = 2^p2
        let p2 = (9.0f64 / 8.0).log2() / (1.0 - (4.0f64 / 3.0).log2());
        assert!((p2 - 0.29049).abs() < 1e-5);
        assert!((kc_value(2).unwrap() - 2f64.powf(p2)).abs() < 1e-14);
        assert!((kc_value(2).unwrap() - 1.2230).abs() < 1e-4);
    }

    #[test]
    fn kc_monotone_and_bounded() {
        let mut prev = kc_value(1).unwrap();
        for m in 2..=1024u64 {
            let v = kc_value(m).unwrap();
            assert!(v > prev, "KC({m})");
            assert!(v < 2.6855);
            prev = v;
        }
    }

    #[test]
    fn khinchin_constant_three_decimals() {
        let k = khinchin_constant(1e-3).unwrap();
        assert!((k - 2.685).abs() <= 1e-3, "{k}");
        for m in [1u64, 16, 4096] {
            assert!(kc_value(m).unwrap() < k + 1e-3);
        }
        assert!(khinchin_constant(0.0).is_err());
    }
}
