//! Dense univariate polynomials over the integers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[i]` is the coefficient of `x^i`; the leading coefficient is never
/// zero, so the zero polynomial is not representable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<BigInt>", into = "Vec<BigInt>")]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl TryFrom<Vec<BigInt>> for IntegerPolynomial {
    type Error = crate::Error;

    fn try_from(coeffs: Vec<BigInt>) -> Result<Self> {
        IntegerPolynomial::new(coeffs)
    }
}

impl From<IntegerPolynomial> for Vec<BigInt> {
    fn from(p: IntegerPolynomial) -> Self {
        p.coeffs
    }
}

impl IntegerPolynomial {
    /// Builds a polynomial, trimming zero high-order coefficients.
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return invalid("zero polynomial");
        }
        Ok(IntegerPolynomial { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^degree - radicand`
    pub fn nth_root_of(radicand: BigInt, degree: usize) -> Result<Self> {
        if degree == 0 {
            return invalid("degree must be positive");
        }
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[0] = -radicand;
        coeffs[degree] = BigInt::one();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("nonzero polynomial")
    }

    /// gcd of all coefficients, always positive.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        let g = self.content();
        let flip = self.leading().is_negative();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let q = if g.is_one() { c.clone() } else { c / &g };
                if flip {
                    -q
                } else {
                    q
                }
            })
            .collect();
        IntegerPolynomial { coeffs }
    }

    pub fn is_primitive(&self) -> bool {
        self.leading().is_positive() && self.content().is_one()
    }

    pub fn derivative(&self) -> Option<Self> {
        if self.degree() == 0 {
            return None;
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        Self::new(coeffs).ok()
    }

    /// Value at an integer point, by Horner's rule.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// `q^d · P(p/q)`; shares the sign of `P(p/q)` when `q > 0`.
    pub fn eval_homogeneous(&self, p: &BigInt, q: &BigInt) -> BigInt {
        if q.is_one() {
            return self.eval_int(p);
        }
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c * &qpow;
            qpow *= q;
        }
        acc
    }

    pub fn sign_at(&self, x: &BigRational) -> Sign {
        self.eval_homogeneous(x.numer(), x.denom()).sign()
    }

    pub fn sign_at_int(&self, x: &BigInt) -> Sign {
        self.eval_int(x).sign()
    }

    /// `P(x + m)`, by repeated synthetic division.
    pub fn taylor_shift(&self, m: &BigInt) -> Self {
        let mut c = self.coeffs.clone();
        let d = self.degree();
        let unit = m.is_one();
        for i in 0..d {
            for j in (i..d).rev() {
                let (lo, hi) = c.split_at_mut(j + 1);
                if unit {
                    lo[j] += &hi[0];
                } else {
                    lo[j] += &hi[0] * m;
                }
            }
        }
        IntegerPolynomial { coeffs: c }
    }

    /// `x^d · P(1/x)`. The result may have a lower degree when `P(0) = 0`.
    pub fn reversed(&self) -> Result<Self> {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// `P(-x)`
    pub fn reflected(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        IntegerPolynomial { coeffs }
    }

    /// Integer Cauchy bound: every real root has absolute value below it.
    pub fn cauchy_bound(&self) -> BigInt {
        let lead = self.leading().abs();
        let max_ratio = self.coeffs[..self.degree()]
            .iter()
            .map(|c| num_integer::Integer::div_ceil(&c.abs(), &lead))
            .max()
            .unwrap_or_else(BigInt::zero);
        max_ratio + 1
    }

    /// Pseudo-remainder of `self` by `divisor`, scaled by a positive factor so
    /// that its sign agrees with the true remainder.
    fn signed_prem(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree();
        if self.degree() < dd {
            return Self::new(self.coeffs.clone()).ok();
        }
        let lc = divisor.leading().clone();
        let lc_abs = lc.abs();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.pop().expect("non-empty");
            if top.is_zero() {
                continue;
            }
            let shift = r.len() - dd;
            // r <- |lc|·r - sign(lc)·top·x^shift·(divisor - lc x^dd)
            for c in r.iter_mut() {
                *c *= &lc_abs;
            }
            let factor = if lc.is_negative() { -top } else { top };
            for (k, dc) in divisor.coeffs[..dd].iter().enumerate() {
                r[shift + k] -= &factor * dc;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Self::new(r).ok()
    }

    /// Primitive gcd over `Z[x]` (positive leading coefficient).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive(), other.primitive())
        } else {
            (other.primitive(), self.primitive())
        };
        loop {
            match a.signed_prem(&b) {
                None => return b,
                Some(r) if r.degree() == 0 => {
                    return IntegerPolynomial {
                        coeffs: vec![BigInt::one()],
                    }
                }
                Some(r) => {
                    a = b;
                    b = r.primitive();
                }
            }
        }
    }

    /// Exact quotient `self / divisor`; `None` when the division leaves a
    /// remainder or a non-integral coefficient.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree();
        if self.degree() < dd {
            return None;
        }
        let lc = divisor.leading();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); self.degree() - dd + 1];
        for i in (0..q.len()).rev() {
            let top = &r[i + dd];
            let (quot, rem) = top.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (k, dc) in divisor.coeffs.iter().enumerate() {
                r[i + k] -= &quot * dc;
            }
            q[i] = quot;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Self::new(q).ok()
    }

    /// Sturm chain `P, P', -rem(P, P'), ...` up to a constant.
    pub fn sturm_chain(&self) -> Vec<IntegerPolynomial> {
        let mut chain = vec![self.clone()];
        let Some(d) = self.derivative() else {
            return chain;
        };
        chain.push(d);
        loop {
            let n = chain.len();
            let Some(r) = chain[n - 2].signed_prem(&chain[n - 1]) else {
                break;
            };
            let g = r.content();
            let neg = IntegerPolynomial {
                coeffs: r.coeffs.iter().map(|c| -(c / &g)).collect(),
            };
            let constant = neg.degree() == 0;
            chain.push(neg);
            if constant {
                break;
            }
        }
        chain
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots(&self, a: &BigRational, b: &BigRational) -> usize {
        let chain = self.sturm_chain();
        let va = sign_variations(&chain, a);
        let vb = sign_variations(&chain, b);
        va.saturating_sub(vb)
    }
}

fn sign_variations(chain: &[IntegerPolynomial], x: &BigRational) -> usize {
    let mut prev = Sign::NoSign;
    let mut count = 0;
    for p in chain {
        let s = p.sign_at(x);
        if s == Sign::NoSign {
            continue;
        }
        if prev != Sign::NoSign && s != prev {
            count += 1;
        }
        prev = s;
    }
    count
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}x^{i}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn cmp_rational_int(x: &BigRational, k: &BigInt) -> Ordering {
    x.numer().cmp(&(k * x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntegerPolynomial {
        IntegerPolynomial::from_i64(c).unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(IntegerPolynomial::from_i64(&[0, 0]).is_err());
        assert_eq!(p(&[1, 2, 0, 0]).degree(), 1);
    }

    #[test]
    fn homogeneous_evaluation() {
        // x^2 - 2 at 3/2: 9/4 - 2 = 1/4, scaled by 4 -> 1
        assert_eq!(p(&[-2, 0, 1]).eval_homogeneous(&3.into(), &2.into()), 1.into());
        // 2x^3 - x + 5 at -1/3: -2/27 + 1/3 + 5, times 27 -> -2 + 9 + 135
        assert_eq!(
            p(&[5, -1, 0, 2]).eval_homogeneous(&(-1).into(), &3.into()),
            142.into()
        );
    }

    #[test]
    fn taylor_shift_matches_expansion() {
        // (x+2)^2 - 2 = x^2 + 4x + 2
        assert_eq!(p(&[-2, 0, 1]).taylor_shift(&2.into()), p(&[2, 4, 1]));
        // (x+1)^3 = x^3 + 3x^2 + 3x + 1
        assert_eq!(p(&[0, 0, 0, 1]).taylor_shift(&1.into()), p(&[1, 3, 3, 1]));
        assert_eq!(p(&[0, 0, 0, 1]).taylor_shift(&(-1).into()), p(&[-1, 3, -3, 1]));
    }

    #[test]
    fn gcd_and_division() {
        // (x-1)^2 (x+1) and its derivative share (x-1)
        let f = p(&[1, -1, -1, 1]);
        let g = f.gcd(&f.derivative().unwrap());
        assert_eq!(g, p(&[-1, 1]));
        assert_eq!(f.exact_div(&g).unwrap(), p(&[-1, 0, 1]));
        assert!(p(&[-2, 0, 1]).exact_div(&p(&[-1, 1])).is_none());
    }

    #[test]
    fn sturm_counts() {
        let f = p(&[-2, 0, 1]);
        assert_eq!(f.count_roots(&r(-2, 1), &r(2, 1)), 2);
        assert_eq!(f.count_roots(&r(1, 1), &r(2, 1)), 1);
        assert_eq!(f.count_roots(&r(2, 1), &r(3, 1)), 0);
        // x^3 - 2 has a single real root
        assert_eq!(p(&[-2, 0, 0, 1]).count_roots(&r(-100, 1), &r(100, 1)), 1);
        // (x-1)(x-2)(x-3)(x-4)
        let q = p(&[24, -50, 35, -10, 1]);
        assert_eq!(q.count_roots(&r(0, 1), &r(5, 1)), 4);
        assert_eq!(q.count_roots(&r(3, 2), &r(7, 2)), 2);
    }

    #[test]
    fn cauchy_bound_dominates_roots() {
        assert!(p(&[-2, 0, 0, 1]).cauchy_bound() >= 2.into());
        let q = p(&[24, -50, 35, -10, 1]);
        assert!(q.cauchy_bound() > 4.into());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-2, 0, 0, 1]).to_string(), "x^3 - 2");
        assert_eq!(p(&[1, -1, 3]).to_string(), "3x^2 - x + 1");
    }
}
