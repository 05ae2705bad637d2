//! Exact regular continued fraction expansion by Lagrange's method.
//!
//! Each step extracts `m = floor(root)` and replaces `P(x)` with
//! `±x^d · P(m + 1/x)`, whose root above 1 is the next complete quotient.
//! Only integer arithmetic is involved, so no coefficient can drift.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::algebraic::{floor_in, AlgebraicNumber};
use super::poly::IntegerPolynomial;
use crate::error::{invalid, Error, Result};

/// Finite prefix `[b0; b1, b2, ...]` of a regular continued fraction.
///
/// `b0` is the integer part of any sign; `coeffs` holds the positive partial
/// quotients `b1..bN`, all certified.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CFExpansion {
    pub b0: BigInt,
    pub coeffs: Vec<u64>,
}

impl CFExpansion {
    pub fn new(b0: impl Into<BigInt>, coeffs: Vec<u64>) -> Result<Self> {
        if coeffs.contains(&0) {
            return invalid("partial quotients must be positive");
        }
        Ok(CFExpansion {
            b0: b0.into(),
            coeffs,
        })
    }

    /// Number of certified partial quotients after `b0`.
    pub fn certified_len(&self) -> usize {
        self.coeffs.len()
    }

    /// `b_n` for `n >= 1`.
    pub fn partial_quotient(&self, n: usize) -> Option<u64> {
        n.checked_sub(1).and_then(|i| self.coeffs.get(i).copied())
    }

    pub fn require(&self, n: usize) -> Result<()> {
        if n > self.certified_len() {
            return Err(Error::InsufficientExpansion {
                needed: n,
                available: self.certified_len(),
            });
        }
        Ok(())
    }

    /// True when `self` agrees with `other` on every coefficient both carry.
    pub fn agrees_with(&self, other: &CFExpansion) -> bool {
        self.b0 == other.b0
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| a == b)
    }
}

/// Incremental Lagrange expansion of an algebraic number.
///
/// The first call to [`next_term`](Self::next_term) yields `b0`, later calls
/// yield `b1, b2, ...`.
#[derive(Clone, Debug)]
pub struct LagrangeExpander {
    poly: IntegerPolynomial,
    lo: BigRational,
    // None: unbounded above
    hi: Option<BigRational>,
    emitted: usize,
}

impl LagrangeExpander {
    pub fn new(num: &AlgebraicNumber) -> Self {
        let (lo, hi) = num.interval();
        LagrangeExpander {
            poly: num.poly().primitive(),
            lo: lo.clone(),
            hi: Some(hi.clone()),
            emitted: 0,
        }
    }

    pub fn emitted(&self) -> usize {
        self.emitted
    }

    /// Polynomial whose isolated root is the current complete quotient.
    pub fn current_poly(&self) -> &IntegerPolynomial {
        &self.poly
    }

    pub fn next_term(&mut self) -> Result<BigInt> {
        let m = floor_in(&self.poly, &self.lo, self.hi.as_ref())?;
        let m_rat = BigRational::from_integer(m.clone());
        let m_next = BigRational::from_integer(&m + 1);

        // Narrow to (max(lo, m), min(hi, m + 1)), then map x -> 1/(x - m).
        let upper = match &self.hi {
            Some(h) if *h < m_next => h.clone(),
            _ => m_next,
        };
        let new_lo = (upper - &m_rat).recip();
        let new_hi = if self.lo > m_rat {
            Some((&self.lo - &m_rat).recip())
        } else {
            None
        };

        // P(m) != 0 (checked by floor_in), so the degree is preserved.
        let shifted = self.poly.taylor_shift(&m);
        let mut next = shifted.reversed()?;
        if next.leading().is_negative() {
            next = IntegerPolynomial::new(next.coeffs().iter().map(|c| -c).collect())?;
        }
        // Integer shifts and reversal are invertible over Z[x], so the content
        // stays 1 and no gcd is needed here.
        self.poly = next;
        self.lo = new_lo;
        self.hi = new_hi;
        self.emitted += 1;
        Ok(m)
    }

    /// Snapshot of the current complete quotient as an algebraic number.
    pub fn remainder(&self) -> AlgebraicNumber {
        let hi = match &self.hi {
            Some(h) => h.clone(),
            None => {
                let bound = BigRational::from_integer(self.poly.cauchy_bound());
                if bound > self.lo {
                    bound
                } else {
                    &self.lo + BigRational::one()
                }
            }
        };
        AlgebraicNumber::from_parts(self.poly.clone(), self.lo.clone(), hi)
    }
}

/// First `terms` coefficients (counting `b0`) of the continued fraction of `num`.
pub fn cf_expand(num: &AlgebraicNumber, terms: usize) -> Result<CFExpansion> {
    if terms < 1 {
        return invalid("terms must be at least 1");
    }
    let mut exp = LagrangeExpander::new(num);
    let b0 = exp.next_term()?;
    let mut coeffs = Vec::with_capacity(terms - 1);
    for _ in 1..terms {
        let b = exp.next_term()?;
        debug_assert!(b > BigInt::zero());
        coeffs.push(b.to_u64().ok_or(Error::CoefficientOverflow)?);
    }
    Ok(CFExpansion { b0, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::algebraic::isolate_root;

    fn root(c: &[i64], lo: i64, hi: i64) -> AlgebraicNumber {
        isolate_root(
            &IntegerPolynomial::from_i64(c).unwrap(),
            &BigRational::from_integer(lo.into()),
            &BigRational::from_integer(hi.into()),
        )
        .unwrap()
    }

    #[test]
    fn quadratic_examples() {
        let sqrt2 = AlgebraicNumber::nth_root(2, 2).unwrap();
        let cf = cf_expand(&sqrt2, 5).unwrap();
        assert_eq!(cf.b0, 1.into());
        assert_eq!(cf.coeffs, vec![2, 2, 2, 2]);

        let phi = root(&[-1, -1, 1], 1, 2);
        let cf = cf_expand(&phi, 5).unwrap();
        assert_eq!(cf.b0, 1.into());
        assert_eq!(cf.coeffs, vec![1, 1, 1, 1]);
    }

    #[test]
    fn cube_root_of_two() {
        let a = AlgebraicNumber::nth_root(2, 3).unwrap();
        let cf = cf_expand(&a, 10).unwrap();
        assert_eq!(cf.b0, 1.into());
        assert_eq!(cf.coeffs, vec![3, 1, 5, 1, 1, 4, 1, 1, 8]);
    }

    #[test]
    fn negative_root_uses_floor_convention() {
        // -sqrt(2) = -2 + (2 - sqrt 2) = [-2; 1, 1, 2, 2, 2, ...]
        let a = root(&[-2, 0, 1], -2, -1);
        let cf = cf_expand(&a, 6).unwrap();
        assert_eq!(cf.b0, (-2).into());
        assert_eq!(cf.coeffs, vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn wide_hint_interval() {
        // plastic number, root of x^3 - x - 1 near 1.3247; CF [1; 3, 12, 1, 1, 3, 2, 3, 2, 4]
        let a = root(&[-1, -1, 0, 1], -10, 10);
        let cf = cf_expand(&a, 10).unwrap();
        assert_eq!(cf.b0, 1.into());
        assert_eq!(cf.coeffs, vec![3, 12, 1, 1, 3, 2, 3, 2, 4]);
    }

    #[test]
    fn zero_terms_rejected() {
        let a = AlgebraicNumber::nth_root(2, 3).unwrap();
        assert!(matches!(cf_expand(&a, 0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn content_stays_one() {
        let a = AlgebraicNumber::nth_root(5, 4).unwrap();
        let mut exp = LagrangeExpander::new(&a);
        for _ in 0..50 {
            exp.next_term().unwrap();
            assert!(exp.current_poly().is_primitive());
        }
        let rem = exp.remainder();
        assert!(crate::cf::algebraic::floor_of_root(&rem).unwrap() >= BigInt::one());
    }

    #[test]
    fn prefix_stability() {
        let a = AlgebraicNumber::nth_root(3, 5).unwrap();
        let short = cf_expand(&a, 40).unwrap();
        let long = cf_expand(&a, 120).unwrap();
        assert_eq!(short.coeffs[..], long.coeffs[..39]);
    }
}
