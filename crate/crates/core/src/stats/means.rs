use serde::{Deserialize, Serialize};

use crate::cf::CFExpansion;
use crate::distmodel::khinchin_constant_reference;
use crate::error::{invalid, Result};

fn checkpoint_sums(
    cf: &CFExpansion,
    checkpoints: &[usize],
    f: impl Fn(u64) -> f64,
) -> Result<Vec<f64>> {
    let Some(&top) = checkpoints.iter().max() else {
        return Ok(Vec::new());
    };
    if checkpoints.contains(&0) {
        return invalid("checkpoints must be at least 1");
    }
    cf.require(top)?;
    // prefix[i] = Σ_{j < i} f(b_{j+1}), compensated in blocks
    let mut prefix = Vec::with_capacity(top + 1);
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    prefix.push(0.0);
    for &b in &cf.coeffs[..top] {
        let v = f(b);
        let t = sum + v;
        comp += if sum.abs() >= v.abs() {
            (sum - t) + v
        } else {
            (v - t) + sum
        };
        sum = t;
        prefix.push(sum + comp);
    }
    Ok(checkpoints
        .iter()
        .map(|&n| prefix[n] / n as f64)
        .collect())
}

/// `2^((1/n)·Σ log2 b_i)` at each checkpoint `n`.
pub fn geometric_mean_series(cf: &CFExpansion, checkpoints: &[usize]) -> Result<Vec<f64>> {
    Ok(checkpoint_sums(cf, checkpoints, |b| (b as f64).ln())?
        .into_iter()
        .map(f64::exp)
        .collect())
}

/// Running means `(1/n)·Σ b_i` at each checkpoint.
pub fn arithmetic_mean_series(cf: &CFExpansion, checkpoints: &[usize]) -> Result<Vec<f64>> {
    checkpoint_sums(cf, checkpoints, |b| b as f64)
}

pub fn geometric_mean(cf: &CFExpansion, n: usize) -> Result<f64> {
    Ok(geometric_mean_series(cf, &[n])?[0])
}

/// Which coefficient is divided by `n` in [`k_of_a`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KIndexing {
    /// `b_n / n`
    #[default]
    Quotient,
    /// `n`-th entry of `[b0, b1, ...]` counted from 1, i.e. `b_{n-1} / n`.
    Position,
}

/// Maximum of the coefficient-to-index ratio over `lo..=hi` and the
/// smallest index attaining it.
pub fn k_of_a(
    cf: &CFExpansion,
    lo: usize,
    hi: usize,
    indexing: KIndexing,
) -> Result<(f64, usize)> {
    if lo < 1 || hi < lo {
        return invalid(format!("empty range [{lo}, {hi}]"));
    }
    let coeff = |n: usize| -> Result<u64> {
        match indexing {
            KIndexing::Quotient => {
                cf.require(n)?;
                Ok(cf.coeffs[n - 1])
            }
            KIndexing::Position if n == 1 => {
                // b0 may be zero or negative; it never beats a positive ratio
                Ok(u64::try_from(&cf.b0).unwrap_or(0))
            }
            KIndexing::Position => {
                cf.require(n - 1)?;
                Ok(cf.coeffs[n - 2])
            }
        }
    };
    let (mut best_b, mut best_n) = (coeff(lo)?, lo);
    for n in lo + 1..=hi {
        let b = coeff(n)?;
        // b / n > best_b / best_n, compared exactly
        if b as u128 * best_n as u128 > best_b as u128 * n as u128 {
            best_b = b;
            best_n = n;
        }
    }
    Ok((best_b as f64 / best_n as f64, best_n))
}

/// `|K0 - gm|·√n`.
pub fn bailey_c(gm: f64, n: usize) -> Result<f64> {
    if n < 1 {
        return invalid("n must be at least 1");
    }
    if !gm.is_finite() {
        return invalid("geometric mean must be finite");
    }
    Ok((khinchin_constant_reference() - gm).abs() * (n as f64).sqrt())
}

/// `log2(1 + 1/(K·n)) / 0.7^n` for `n = 1..=n_max`.
pub fn levy_ratio_series(k: f64, n_max: usize) -> Result<Vec<f64>> {
    if !(k > 0.0) || !k.is_finite() {
        return invalid("K must be positive");
    }
    if n_max < 1 {
        return invalid("n_max must be at least 1");
    }
    let ln_07 = 0.7f64.ln();
    Ok((1..=n_max)
        .map(|n| {
            let s = 1.0 / (k * n as f64);
            let num = s.ln_1p() / std::f64::consts::LN_2;
            (num.ln() - n as f64 * ln_07).exp()
        })
        .collect())
}
