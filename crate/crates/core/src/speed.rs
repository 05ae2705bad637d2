//! Rational-approximation speed of convergents and the `r_n` growth series.
//!
//! With `α` the complete quotient after `b_n`,
//! `|a - A(n)/B(n)|·B(n)^2 = 1 / (α + B(n-1)/B(n))`, so every metric reduces
//! to `f(log B(n)) / (α + B(n-1)/B(n))`. `α` is bracketed exactly from tail
//! coefficients; only the final quotient is rounded.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cf::{
    cf_expand, complete_quotient_bounds, convergents, AlgebraicNumber, CFExpansion,
    ConvergentSequence, DEFAULT_TAIL_DEPTH,
};
use crate::error::{invalid, Error, Result};
use crate::numeric::{ln_big, ratio_to_f64, rational_to_f64, LogBase};

/// Allowance for rounding in the final floating-point steps.
const ROUNDING: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpeedMetric {
    /// `B^2 log B`
    Khinchin,
    /// `B^2 √(log B) / log log B`
    NewSpeed,
    /// `B^2 log B / log log B`
    Adams,
    /// `B^2 exp(√(log B) / log log B)`
    Abc,
}

impl SpeedMetric {
    pub const ALL: [SpeedMetric; 4] = [
        SpeedMetric::Khinchin,
        SpeedMetric::NewSpeed,
        SpeedMetric::Adams,
        SpeedMetric::Abc,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SpeedMetric::Khinchin => "khinchin",
            SpeedMetric::NewSpeed => "newspeed",
            SpeedMetric::Adams => "adams",
            SpeedMetric::Abc => "abc",
        }
    }

    /// `weight(B) / B^2` as a function of `L = log B`.
    pub fn factor(self, log_b: f64, base: LogBase) -> Result<f64> {
        if self == SpeedMetric::Khinchin {
            return Ok(log_b);
        }
        let ll = base.log(log_b);
        if !(ll > 0.0) {
            return Err(Error::Domain(format!(
                "{} needs log log B > 0",
                self.as_str()
            )));
        }
        Ok(match self {
            SpeedMetric::Khinchin => unreachable!(),
            SpeedMetric::NewSpeed => log_b.sqrt() / ll,
            SpeedMetric::Adams => log_b / ll,
            SpeedMetric::Abc => (log_b.sqrt() / ll).exp(),
        })
    }
}

impl fmt::Display for SpeedMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SpeedMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SpeedMetric::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown speed metric {s:?}")))
    }
}

/// Closed interval of reals.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpeedInterval {
    pub lo: f64,
    pub hi: f64,
}

impl SpeedInterval {
    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

fn log_of(b: &BigInt, base: LogBase) -> f64 {
    base.from_ln(ln_big(b))
}

/// Speed for a known denominator and error `|a - A/B|`.
pub fn speed_from_error(metric: SpeedMetric, base: LogBase, b: &BigInt, err: f64) -> Result<f64> {
    if *b <= BigInt::from(2) && metric != SpeedMetric::Khinchin {
        return Err(Error::Domain(format!("{metric} needs B > 2")));
    }
    if *b < BigInt::one() {
        return invalid("denominator must be positive");
    }
    let lb = log_of(b, base);
    let b2 = ln_big(b) * 2.0;
    Ok(metric.factor(lb, base)? * (err.ln() + b2).exp())
}

/// `(α_lo, α_hi)` as floats once the bracket is relatively tighter than
/// `2^-40`; `None` when the tail runs out first.
fn alpha_bounds(tail: &[u64], min_depth: usize) -> Option<(f64, f64)> {
    let mut depth = min_depth.max(1);
    loop {
        if depth > tail.len() {
            return None;
        }
        let (lo, hi) = complete_quotient_bounds(&tail[..depth]);
        let gap = (&hi - &lo) * BigRational::from_integer(BigInt::one() << 40u32);
        if gap < lo {
            return Some((rational_to_f64(&lo), rational_to_f64(&hi)));
        }
        depth *= 2;
    }
}

fn speed_at(
    cf: &CFExpansion,
    conv: &ConvergentSequence,
    n: usize,
    metric: SpeedMetric,
    base: LogBase,
) -> Result<Option<SpeedInterval>> {
    let b = conv.denominator(n);
    if *b <= BigInt::from(2) && metric != SpeedMetric::Khinchin {
        return Err(Error::Domain(format!("{metric} needs B(n) > 2, n = {n}")));
    }
    let factor = metric.factor(log_of(b, base), base)?;
    let Some((alpha_lo, alpha_hi)) = alpha_bounds(&cf.coeffs[n..], DEFAULT_TAIL_DEPTH) else {
        return Ok(None);
    };
    let r = ratio_to_f64(&conv.prev_denominator(n), b);
    Ok(Some(SpeedInterval {
        lo: factor / (alpha_hi + r) * (1.0 - ROUNDING),
        hi: factor / (alpha_lo + r) * (1.0 + ROUNDING),
    }))
}

/// Number of extra coefficients expanded beyond the last convergent.
const TAIL_MARGIN: usize = 128;

/// Enclosure of `|a - A(n)/B(n)|·weight(B(n))`.
pub fn speed_value(
    num: &AlgebraicNumber,
    cf: &CFExpansion,
    n: usize,
    metric: SpeedMetric,
    base: LogBase,
) -> Result<SpeedInterval> {
    let mut margin = TAIL_MARGIN;
    let mut owned: Option<CFExpansion> = None;
    loop {
        let c = owned.as_ref().unwrap_or(cf);
        if c.certified_len() > n {
            let conv = convergents(c, n)?;
            if let Some(s) = speed_at(c, &conv, n, metric, base)? {
                return Ok(s);
            }
        }
        if owned.is_some() {
            margin *= 4;
        }
        if margin > 1 << 16 {
            return Err(Error::Certification(format!("speed at n = {n} undecided")));
        }
        owned = Some(cf_expand(num, n + margin + 1)?);
    }
}

pub const DEFAULT_BOUNDARIES: [f64; 5] = [0.5, 5.0, 10.0, 50.0, 100.0];

/// Counts of speed values per bucket `[0, b1), [b1, b2), ..., [b_last, ∞)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpeedBucketReport {
    pub number: String,
    pub metric: SpeedMetric,
    pub log_base: LogBase,
    pub boundaries: Vec<f64>,
    pub counts: Vec<usize>,
    /// First and last convergent index measured.
    pub n_range: (usize, usize),
    /// Indices whose enclosure contained a boundary; classified by midpoint.
    pub straddling: Vec<usize>,
    /// Indices skipped because the metric is undefined there.
    pub excluded: Vec<usize>,
}

impl SpeedBucketReport {
    /// `(lo, hi)` of bucket `i`; `hi = None` for the open last bucket.
    pub fn bucket_range(&self, i: usize) -> (f64, Option<f64>) {
        let lo = if i == 0 { 0.0 } else { self.boundaries[i - 1] };
        (lo, self.boundaries.get(i).copied())
    }

    pub fn measured(&self) -> usize {
        self.counts.iter().sum()
    }
}

fn bucket_of(boundaries: &[f64], x: f64) -> usize {
    boundaries.partition_point(|&b| b <= x)
}

/// Classifies the speed of convergents `1..=count`.
pub fn speed_buckets(
    number: &str,
    num: &AlgebraicNumber,
    count: usize,
    metric: SpeedMetric,
    boundaries: &[f64],
    base: LogBase,
) -> Result<SpeedBucketReport> {
    if count < 2 {
        return invalid("count must be at least 2");
    }
    if boundaries.is_empty() {
        return invalid("at least one bucket boundary is required");
    }
    if boundaries.iter().any(|b| !(b.is_finite() && *b > 0.0))
        || boundaries.windows(2).any(|w| w[0] >= w[1])
    {
        return invalid("boundaries must be positive and strictly increasing");
    }
    let mut margin = TAIL_MARGIN;
    let mut values: Vec<Option<Result<Option<SpeedInterval>>>> = vec![None; count + 1];
    loop {
        let cf = cf_expand(num, count + margin + 1)?;
        let conv = convergents(&cf, count)?;
        values
            .par_iter_mut()
            .enumerate()
            .skip(1)
            .for_each(|(n, slot)| {
                if !matches!(slot, Some(Ok(Some(_)))) {
                    *slot = Some(speed_at(&cf, &conv, n, metric, base));
                }
            });
        if values[1..].iter().all(|v| !matches!(v, Some(Ok(None)))) {
            break;
        }
        margin *= 4;
        if margin > 1 << 16 {
            return Err(Error::Certification("speed values undecided".into()));
        }
    }

    let mut counts = vec![0usize; boundaries.len() + 1];
    let (mut straddling, mut excluded) = (Vec::new(), Vec::new());
    for (n, v) in values.into_iter().enumerate().skip(1) {
        match v.expect("computed") {
            Ok(Some(s)) => {
                if boundaries.iter().any(|&b| s.contains(b)) {
                    straddling.push(n);
                }
                counts[bucket_of(boundaries, s.mid())] += 1;
            }
            Ok(None) => unreachable!("loop exits only when every value is decided"),
            Err(Error::Domain(_)) => excluded.push(n),
            Err(e) => return Err(e),
        }
    }
    Ok(SpeedBucketReport {
        number: number.to_string(),
        metric,
        log_base: base,
        boundaries: boundaries.to_vec(),
        counts,
        n_range: (1, count),
        straddling,
        excluded,
    })
}

/// Rows `metric,range_lo,range_hi,count`; an open upper end is left empty.
pub fn write_buckets_csv<W: Write>(out: W, reports: &[SpeedBucketReport]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let err = |e: csv::Error| Error::InvalidInput(format!("csv: {e}"));
    w.write_record(["number", "metric", "range_lo", "range_hi", "count"])
        .map_err(err)?;
    for r in reports {
        for (i, c) in r.counts.iter().enumerate() {
            let (lo, hi) = r.bucket_range(i);
            w.write_record([
                r.number.clone(),
                r.metric.to_string(),
                lo.to_string(),
                hi.map(|h| h.to_string()).unwrap_or_default(),
                c.to_string(),
            ])
            .map_err(err)?;
        }
    }
    w.flush().map_err(|e| Error::InvalidInput(e.to_string()))
}

/// `r_n = B(n) / (B(n-1)·log B(n-1))` over a range of indices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RnSeries {
    pub values: Vec<(usize, f64)>,
    /// Indices with `B(n-1) = 1`, where the logarithm vanishes.
    pub skipped: Vec<usize>,
}

impl RnSeries {
    pub fn count_above_one(&self) -> usize {
        self.values.iter().filter(|(_, r)| *r > 1.0).count()
    }
}

pub fn rn_series(cf: &CFExpansion, lo: usize, hi: usize, base: LogBase) -> Result<RnSeries> {
    if lo < 1 || hi < lo {
        return invalid(format!("empty range [{lo}, {hi}]"));
    }
    let conv = convergents(cf, hi)?;
    let mut values = Vec::with_capacity(hi - lo + 1);
    let mut skipped = Vec::new();
    for n in lo..=hi {
        let prev = conv.denominator(n - 1);
        if prev.is_one() {
            skipped.push(n);
            continue;
        }
        let ratio = ratio_to_f64(conv.denominator(n), prev);
        values.push((n, ratio / log_of(prev, base)));
    }
    Ok(RnSeries { values, skipped })
}

pub fn count_rn_above_one(cf: &CFExpansion, lo: usize, hi: usize, base: LogBase) -> Result<usize> {
    Ok(rn_series(cf, lo, hi, base)?.count_above_one())
}
