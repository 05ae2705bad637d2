//! Interval-based routines: decimal enclosures of an algebraic number by
//! bisection, and the continued fraction shared by all reals in an interval.
//!
//! These do not use the Lagrange transform and serve as an independent check
//! on [`cf_expand`](super::cf_expand).

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};

use super::algebraic::AlgebraicNumber;
use super::expand::CFExpansion;
use crate::error::{invalid, Error, Result};

/// `[p / 10^digits, (p + 1) / 10^digits]` containing the root.
pub fn decimal_oracle(num: &AlgebraicNumber, digits: u32) -> Result<(BigRational, BigRational)> {
    if digits < 1 {
        return invalid("digits must be at least 1");
    }
    let scale = BigInt::from(10u32).pow(digits);
    let p = grid_floor(num, &scale)?;
    Ok((
        BigRational::new(p.clone(), scale.clone()),
        BigRational::new(p + 1, scale),
    ))
}

/// `[p / 2^bits, (p + 1) / 2^bits]` containing the root.
pub(crate) fn bisect(num: &AlgebraicNumber, bits: u32) -> (BigRational, BigRational) {
    let scale = BigInt::one() << bits;
    let p = grid_floor(num, &scale).expect("isolated root is irrational");
    (
        BigRational::new(p.clone(), scale.clone()),
        BigRational::new(p + 1, scale),
    )
}

/// Largest integer `p` with `p / scale < root`, by bisection on the grid.
fn grid_floor(num: &AlgebraicNumber, scale: &BigInt) -> Result<BigInt> {
    let (lo, hi) = num.interval();
    let poly = num.poly();
    let below_sign = num.sign_below_root();
    let scale_r = BigRational::from_integer(scale.clone());
    let mut below = (lo * &scale_r).floor().to_integer();
    let mut above = (hi * &scale_r).ceil().to_integer();
    while &above - &below > BigInt::one() {
        let mid: BigInt = (&below + &above) >> 1;
        // unreduced: a gcd with 10^digits at every step dominates otherwise
        let x = BigRational::new_raw(mid.clone(), scale.clone());
        let is_below = if &x <= lo {
            true
        } else if &x >= hi {
            false
        } else {
            match poly.eval_homogeneous(&mid, scale).sign() {
                Sign::NoSign => return Err(Error::Rational),
                s => s == below_sign,
            }
        };
        if is_below {
            below = mid;
        } else {
            above = mid;
        }
    }
    Ok(below)
}

/// Coefficients common to the regular continued fractions of every real in
/// the closed interval `[lo, hi]`.
///
/// Returns `None` when even the integer part differs across the interval.
/// Otherwise `certified_len` counts the partial quotients emitted before the
/// floors of the transformed endpoints disagree.
pub fn cf_from_interval(lo: &BigRational, hi: &BigRational) -> Result<Option<CFExpansion>> {
    if lo >= hi {
        return invalid("interval must satisfy lo < hi");
    }
    // endpoints as (numerator, positive denominator); each step is one
    // Euclidean division, so no reduction is ever needed
    let (mut lo_n, mut lo_d) = (lo.numer().clone(), lo.denom().clone());
    let (mut hi_n, mut hi_d) = (hi.numer().clone(), hi.denom().clone());
    let mut b0 = None;
    let mut coeffs = Vec::new();
    loop {
        let (m, lo_rem) = lo_n.div_mod_floor(&lo_d);
        if m != hi_n.div_floor(&hi_d) {
            break;
        }
        if b0.is_none() {
            b0 = Some(m.clone());
        } else {
            coeffs.push(m.to_u64().ok_or(Error::CoefficientOverflow)?);
        }
        if lo_rem.is_zero() {
            // the integer m itself terminates here while its neighbours continue
            break;
        }
        // lo' = 1/(hi - m), hi' = 1/(lo - m)
        let hi_rem = &hi_n - &m * &hi_d;
        (lo_n, lo_d, hi_n, hi_d) = (hi_d, hi_rem, lo_d, lo_rem);
    }
    Ok(b0.map(|b0| CFExpansion { b0, coeffs }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::poly::IntegerPolynomial;
    use crate::cf::{cf_expand, isolate_root};
    use num_traits::Signed;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sqrt2_digits() {
        let a = AlgebraicNumber::nth_root(2, 2).unwrap();
        let (lo, hi) = decimal_oracle(&a, 9).unwrap();
        assert_eq!(lo, rat(1_414_213_562, 1_000_000_000));
        // squaring the endpoints brackets 2
        let two = rat(2, 1);
        assert!(&lo * &lo < two && &hi * &hi > two);
        assert_eq!(&hi - &lo, rat(1, 1_000_000_000));
    }

    #[test]
    fn golden_ratio_digits() {
        let phi = isolate_root(
            &IntegerPolynomial::from_i64(&[-1, -1, 1]).unwrap(),
            &rat(1, 1),
            &rat(2, 1),
        )
        .unwrap();
        let (lo, hi) = decimal_oracle(&phi, 9).unwrap();
        assert_eq!(lo, rat(1_618_033_988, 1_000_000_000));
        let f = |x: &BigRational| x * x - x - rat(1, 1);
        assert!(f(&lo).is_negative() && f(&hi).is_positive());
    }

    #[test]
    fn width_is_exact() {
        let a = AlgebraicNumber::nth_root(7, 5).unwrap();
        for d in [1, 5, 40] {
            let (lo, hi) = decimal_oracle(&a, d).unwrap();
            assert_eq!(hi - lo, BigRational::new(1.into(), BigInt::from(10).pow(d)));
        }
    }

    #[test]
    fn interval_hand_case() {
        let cf = cf_from_interval(&rat(141, 100), &rat(142, 100)).unwrap().unwrap();
        assert_eq!(cf.b0, 1.into());
        assert_eq!(cf.coeffs, vec![2, 2]);
    }

    #[test]
    fn interval_touching_a_rational() {
        // 3/2 = [1; 2] while 3/2 + δ = [1; 1, 1, ...]: only b0 is shared.
        let eps = BigRational::new(1.into(), BigInt::from(10).pow(30u32));
        let cf = cf_from_interval(&rat(3, 2), &(rat(3, 2) + eps)).unwrap().unwrap();
        assert_eq!(cf.b0, 1.into());
        assert_eq!(cf.certified_len(), 0);
        // strictly inside (3/2, 3/2 + δ) the shared prefix is long
        let eps = BigRational::new(1.into(), BigInt::from(10).pow(30u32));
        let lo = rat(3, 2) + &eps / BigRational::from_integer(3.into());
        let hi = rat(3, 2) + &eps / BigRational::from_integer(2.into());
        let cf = cf_from_interval(&lo, &hi).unwrap().unwrap();
        assert_eq!(cf.coeffs[..2], [1, 1]);
    }

    #[test]
    fn ambiguous_integer_part() {
        assert_eq!(cf_from_interval(&rat(9, 10), &rat(11, 10)).unwrap(), None);
        assert!(cf_from_interval(&rat(1, 1), &rat(1, 1)).is_err());
    }

    #[test]
    fn oracle_matches_lagrange_for_cube_root() {
        let a = AlgebraicNumber::nth_root(2, 3).unwrap();
        let (lo, hi) = decimal_oracle(&a, 300).unwrap();
        let certified = cf_from_interval(&lo, &hi).unwrap().unwrap();
        assert!(certified.certified_len() > 250);
        let exact = cf_expand(&a, certified.certified_len() + 1).unwrap();
        assert_eq!(certified, exact);
    }
}
