//! Empirical distribution of the tails `x_n = [0; b_n, b_{n+1}, ...]`
//! against the limiting law `log2(1 + s)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Zero};

use crate::cf::CFExpansion;
use crate::distmodel::gk_cdf;
use crate::error::{invalid, Error, Result};

pub const DEFAULT_LEVY_DEPTH: usize = 30;

/// Exact value of `[0; c_1, ..., c_k]`.
fn finite_tail(c: &[u64], last_bump: u64) -> BigRational {
    // evaluate from the innermost term outwards
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for (i, &ci) in c.iter().enumerate().rev() {
        let ci = if i + 1 == c.len() { ci + last_bump } else { ci };
        // 1 / (ci + num/den) = den / (ci·den + num)
        let next_den = BigInt::from(ci) * &den + &num;
        num = den;
        den = next_den;
    }
    BigRational::new(num, den)
}

/// Whether `x_n <= s`, using coefficients `b_n..b_{n+d}` and deepening
/// while the enclosure straddles `s`.
fn tail_at_most(cf: &CFExpansion, n: usize, s: &BigRational, depth: usize) -> Result<bool> {
    let mut d = depth;
    loop {
        let end = n + d;
        if end > cf.certified_len() {
            return Err(Error::Certification(format!(
                "x_{n} vs s undecided with {} coefficients",
                cf.certified_len()
            )));
        }
        let c = &cf.coeffs[n - 1..end];
        // x_n lies strictly between these two
        let a = finite_tail(c, 0);
        let b = finite_tail(c, 1);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        if hi <= *s {
            return Ok(true);
        }
        if lo >= *s {
            return Ok(false);
        }
        d *= 2;
    }
}

/// `|#{n in lo..=hi : x_n <= s} / count - log2(1 + s)|` with tails of
/// depth [`DEFAULT_LEVY_DEPTH`].
pub fn levy_empirical_deviation(cf: &CFExpansion, s: f64, lo: usize, hi: usize) -> Result<f64> {
    levy_empirical_deviation_with_depth(cf, s, lo, hi, DEFAULT_LEVY_DEPTH)
}

pub fn levy_empirical_deviation_with_depth(
    cf: &CFExpansion,
    s: f64,
    lo: usize,
    hi: usize,
    depth: usize,
) -> Result<f64> {
    let expected = gk_cdf(s)?;
    if lo < 1 || hi < lo {
        return invalid(format!("empty range [{lo}, {hi}]"));
    }
    if depth < 1 {
        return invalid("tail depth must be at least 1");
    }
    cf.require(hi)?;
    let s_exact = BigRational::from_f64(s).expect("finite s");
    let mut hits = 0usize;
    for n in lo..=hi {
        if tail_at_most(cf, n, &s_exact, depth)? {
            hits += 1;
        }
    }
    let freq = hits as f64 / (hi - lo + 1) as f64;
    Ok((freq - expected).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_tails() {
        assert_eq!(finite_tail(&[2, 3], 0), BigRational::new(3.into(), 7.into()));
        assert_eq!(finite_tail(&[2, 3], 1), BigRational::new(4.into(), 9.into()));
        assert_eq!(finite_tail(&[1], 0), BigRational::one());
    }

    #[test]
    fn endpoints_of_s() {
        let cf = CFExpansion::new(1, (0..200).map(|i| 1 + (i * 7 % 5) as u64).collect()).unwrap();
        assert_eq!(levy_empirical_deviation(&cf, 1.0, 1, 100).unwrap(), 0.0);
        assert_eq!(levy_empirical_deviation(&cf, 0.0, 1, 100).unwrap(), 0.0);
        assert!(levy_empirical_deviation(&cf, 1.5, 1, 100).is_err());
    }

    #[test]
    fn all_ones_tail() {
        // every x_n = 1/φ ≈ 0.618
        let cf = CFExpansion::new(1, vec![1; 300]).unwrap();
        let below = levy_empirical_deviation(&cf, 0.6, 1, 100).unwrap();
        assert!((below - 0.6f64.ln_1p() / std::f64::consts::LN_2).abs() < 1e-12);
        let above = levy_empirical_deviation(&cf, 0.62, 1, 100).unwrap();
        assert!((above - (1.0 - 0.62f64.ln_1p() / std::f64::consts::LN_2)).abs() < 1e-12);
    }

    #[test]
    fn exhausted_expansion() {
        let cf = CFExpansion::new(1, vec![1; 40]).unwrap();
        assert!(matches!(
            levy_empirical_deviation(&cf, 0.5, 1, 20),
            Err(Error::Certification(_))
        ));
    }
}
