//! Seeded pseudo-random baselines.
//!
//! Decimals are drawn digit by digit from ChaCha20 seeded with
//! `seed_from_u64`, so a longer request extends a shorter one. Coefficient
//! samplers invert the Gauss-Kuzmin tail `P(K >= k) = log2(1 + 1/k)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Pow};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::cf::{cf_from_interval, CFExpansion};
use crate::error::{invalid, Error, Result};

/// Identifies the generator and the digit/coefficient derivation.
pub const GENERATOR_VERSION: &str = "chacha20/rand_chacha-0.9/digits-v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RandomNumberSpec {
    pub seed: u64,
    pub digits: u32,
}

impl RandomNumberSpec {
    pub fn new(seed: u64, digits: u32) -> Result<Self> {
        if digits < 1 {
            return invalid("digits must be at least 1");
        }
        Ok(RandomNumberSpec { seed, digits })
    }

    pub fn label(&self) -> String {
        format!("random(seed={},digits={})", self.seed, self.digits)
    }
}

/// The `digits` decimal digits after "0.".
pub fn random_digits(spec: &RandomNumberSpec) -> Result<String> {
    if spec.digits < 1 {
        return invalid("digits must be at least 1");
    }
    let mut rng = ChaCha20Rng::seed_from_u64(spec.seed);
    Ok((0..spec.digits)
        .map(|_| char::from(b'0' + rng.random_range(0..10u8)))
        .collect())
}

/// `[d, d + 10^-digits]` for the decimal `d = 0.<digits>`.
pub fn random_decimal(spec: &RandomNumberSpec) -> Result<(BigRational, BigRational)> {
    let digits = random_digits(spec)?;
    let p = BigInt::from_str_radix(&digits, 10).expect("decimal digits");
    let scale: BigInt = Pow::pow(BigInt::from(10), spec.digits);
    Ok((
        BigRational::new(p.clone(), scale.clone()),
        BigRational::new(p + 1, scale),
    ))
}

/// Every coefficient the random decimal's interval certifies.
pub fn random_cf(spec: &RandomNumberSpec) -> Result<CFExpansion> {
    let (lo, hi) = random_decimal(spec)?;
    match cf_from_interval(&lo, &hi)? {
        Some(cf) if cf.certified_len() > 0 => Ok(cf),
        _ => Err(Error::DegenerateInterval),
    }
}

/// `n` independent Gauss-Kuzmin coefficients, truncated to `1..=maxn` when
/// given. `b0` is 0.
pub fn gk_sampler(seed: u64, n: usize, maxn: Option<u64>) -> Result<CFExpansion> {
    if n < 1 {
        return invalid("n must be at least 1");
    }
    if maxn == Some(0) {
        return invalid("maxn must be at least 1");
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    // K <= M  <=>  V > log2(1 + 1/(M+1)), so truncation restricts V to (t, 1].
    let t = maxn.map_or(0.0, |m| (1.0 / (m as f64 + 1.0)).ln_1p() / std::f64::consts::LN_2);
    let coeffs = (0..n)
        .map(|_| {
            let w = 1.0 - rng.random::<f64>(); // (0, 1]
            let v = t + (1.0 - t) * w;
            let k = (1.0 / (v * std::f64::consts::LN_2).exp_m1()).floor() as u64;
            let k = k.max(1);
            maxn.map_or(k, |m| k.min(m))
        })
        .collect();
    CFExpansion::new(0, coeffs)
}
