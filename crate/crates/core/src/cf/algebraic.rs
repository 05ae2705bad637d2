//! Real algebraic numbers given by a squarefree polynomial and an isolating
//! interval.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::expand::LagrangeExpander;
use super::poly::{cmp_rational_int, IntegerPolynomial};
use crate::error::{invalid, Error, Result};

/// A real irrational root of an integer polynomial, pinned down by a rational
/// interval `(lo, hi)` that contains no other root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicNumber {
    poly: IntegerPolynomial,
    lo: BigRational,
    hi: BigRational,
}

impl AlgebraicNumber {
    pub fn poly(&self) -> &IntegerPolynomial {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn interval(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    /// Real root `radicand^(1/degree)`; for odd degrees a negative radicand
    /// gives the negative real root.
    pub fn nth_root(radicand: impl Into<BigInt>, degree: usize) -> Result<Self> {
        let radicand = radicand.into();
        if degree < 2 {
            return invalid("root degree must be at least 2");
        }
        if radicand.is_negative() && degree.is_multiple_of(2) {
            return Err(Error::NoRoot);
        }
        let poly = IntegerPolynomial::nth_root_of(radicand.clone(), degree)?;
        let floor = radicand.abs().nth_root(degree as u32);
        if floor.pow(degree as u32) == radicand.abs() {
            return Err(Error::Rational);
        }
        let (lo, hi) = if radicand.is_negative() {
            (-(&floor + 1u32), -floor)
        } else {
            (floor.clone(), floor + 1u32)
        };
        isolate_root(
            &poly,
            &BigRational::from_integer(lo),
            &BigRational::from_integer(hi),
        )
    }

    /// Internal constructor for intervals already known to isolate an
    /// irrational root.
    pub(crate) fn from_parts(poly: IntegerPolynomial, lo: BigRational, hi: BigRational) -> Self {
        AlgebraicNumber { poly, lo, hi }
    }

    /// Sign of the polynomial just above the lower endpoint, i.e. on `(lo, root)`.
    pub fn sign_below_root(&self) -> Sign {
        self.poly.sign_at(&self.lo)
    }

    pub fn to_f64(&self) -> f64 {
        // 60 bits is plenty for a display value
        let (lo, hi) = super::interval::bisect(self, 60);
        let mid = (lo + hi) / BigRational::from_integer(2.into());
        crate::numeric::rational_to_f64(&mid)
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root of {} in ({}, {})", self.poly, self.lo, self.hi)
    }
}

/// `P / gcd(P, P')`, made primitive with a positive leading coefficient.
pub fn squarefree_part(poly: &IntegerPolynomial) -> IntegerPolynomial {
    let prim = poly.primitive();
    let Some(d) = prim.derivative() else {
        return prim;
    };
    let g = prim.gcd(&d);
    if g.degree() == 0 {
        return prim;
    }
    prim.exact_div(&g)
        .expect("gcd divides the polynomial")
        .primitive()
}

/// Certifies that `poly` has exactly one real root in the closed interval
/// `[lo, hi]` and that this root is irrational.
pub fn isolate_root(
    poly: &IntegerPolynomial,
    lo: &BigRational,
    hi: &BigRational,
) -> Result<AlgebraicNumber> {
    if lo >= hi {
        return invalid("isolating interval must satisfy lo < hi");
    }
    let p = squarefree_part(poly);
    if p.degree() == 0 {
        return Err(Error::NoRoot);
    }
    let at_lo = p.sign_at(lo) == Sign::NoSign;
    let at_hi = p.sign_at(hi) == Sign::NoSign;
    let count = p.count_roots(lo, hi) + usize::from(at_lo);
    match count {
        0 => return Err(Error::NoRoot),
        1 => {}
        n => return Err(Error::AmbiguousRoot(n)),
    }
    if at_lo || at_hi || p.degree() == 1 {
        return Err(Error::Rational);
    }
    let num = AlgebraicNumber {
        poly: p,
        lo: lo.clone(),
        hi: hi.clone(),
    };
    reject_rational(&num)?;
    Ok(num)
}

/// A rational root `p/q` of a primitive polynomial has `q | lc`, so its
/// continued fraction ends within about `1.44·log2(lc) + 2` terms; the
/// Lagrange iteration hits an exact integer root before then.
fn reject_rational(num: &AlgebraicNumber) -> Result<()> {
    let bits = num.poly.leading().bits() as usize;
    let steps = bits + bits / 2 + 3;
    let mut exp = LagrangeExpander::new(num);
    for _ in 0..steps {
        exp.next_term()?;
    }
    Ok(())
}

/// Integer part of the root, by exact sign evaluation.
pub fn floor_of_root(num: &AlgebraicNumber) -> Result<BigInt> {
    floor_in(&num.poly, &num.lo, Some(&num.hi))
}

/// Largest integer `m <= root` for the unique root of `poly` in `(lo, hi)`;
/// `hi = None` means the interval is unbounded above.
///
/// Gallops upward from `floor(lo)` by doubling steps, then bisects.
pub(crate) fn floor_in(
    poly: &IntegerPolynomial,
    lo: &BigRational,
    hi: Option<&BigRational>,
) -> Result<BigInt> {
    let below_sign = poly.sign_at(lo);
    if below_sign == Sign::NoSign {
        return Err(Error::Rational);
    }
    let beyond_hi = |k: &BigInt| hi.is_some_and(|h| cmp_rational_int(h, k).is_le());
    // Some(true) when k < root, Some(false) when k > root.
    let below_root = |k: &BigInt| -> Result<bool> {
        if beyond_hi(k) {
            return Ok(false);
        }
        match poly.sign_at_int(k) {
            Sign::NoSign => Err(Error::Rational),
            s => Ok(s == below_sign),
        }
    };

    let mut below = lo.floor().to_integer();
    let mut step = BigInt::one();
    let mut above;
    loop {
        let k = &below + &step;
        if below_root(&k)? {
            below = k;
            step <<= 1;
        } else {
            above = k;
            break;
        }
    }
    loop {
        let gap = &above - &below;
        if gap.is_one() {
            return Ok(below);
        }
        debug_assert!(gap > BigInt::zero());
        let mid = &below + (gap >> 1);
        if below_root(&mid)? {
            below = mid;
        } else {
            above = mid;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntegerPolynomial {
        IntegerPolynomial::from_i64(c).unwrap()
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&p(&[1, -1, -1, 1])), p(&[-1, 0, 1]));
        assert_eq!(squarefree_part(&p(&[-2, 0, 1])), p(&[-2, 0, 1]));
        assert_eq!(squarefree_part(&p(&[-6, 0, 3])), p(&[-2, 0, 1]));
        // (x^2-2)^2 (x+3)^3, negated
        let f = p(&[-2, 0, 1]);
        let g = p(&[3, 1]);
        let mut prod = IntegerPolynomial::from_i64(&[-1]).unwrap();
        for q in [&f, &f, &g, &g, &g] {
            prod = mul(&prod, q);
        }
        assert_eq!(squarefree_part(&prod), mul(&f, &g));
    }

    fn mul(a: &IntegerPolynomial, b: &IntegerPolynomial) -> IntegerPolynomial {
        let mut c = vec![BigInt::zero(); a.degree() + b.degree() + 1];
        for (i, x) in a.coeffs().iter().enumerate() {
            for (j, y) in b.coeffs().iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        IntegerPolynomial::new(c).unwrap()
    }

    #[test]
    fn isolation() {
        let sqrt2 = isolate_root(&p(&[-2, 0, 1]), &r(1), &r(2)).unwrap();
        let (lo, hi) = sqrt2.interval();
        assert!(lo >= &r(1) && hi <= &r(2));
        assert_ne!(sqrt2.poly().sign_at(lo), sqrt2.poly().sign_at(hi));

        assert_eq!(
            isolate_root(&p(&[-2, 0, 1]), &r(-2), &r(2)),
            Err(Error::AmbiguousRoot(2))
        );
        assert!(isolate_root(&p(&[-1, -1, 1]), &r(1), &r(2)).is_ok());
        assert_eq!(isolate_root(&p(&[-2, 0, 1]), &r(2), &r(3)), Err(Error::NoRoot));
    }

    #[test]
    fn rational_roots_rejected() {
        // root exactly at an endpoint
        assert_eq!(isolate_root(&p(&[-1, 0, 1]), &r(0), &r(1)), Err(Error::Rational));
        // (3x - 2)(x^2 + 1): the only real root is 2/3, strictly inside
        assert_eq!(
            isolate_root(&p(&[-2, 3, -2, 3]), &r(0), &r(1)),
            Err(Error::Rational)
        );
        // (7x - 5)(x^2 - 3) near 5/7
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(
            isolate_root(&p(&[15, -21, -5, 7]), &half, &r(1)),
            Err(Error::Rational)
        );
        assert_eq!(AlgebraicNumber::nth_root(8, 3), Err(Error::Rational));
    }

    #[test]
    fn floors() {
        let cases = [(2, 2, 1), (2, 3, 1), (1000, 2, 31), (-2, 3, -2), (-30, 3, -4)];
        for (rad, deg, want) in cases {
            let a = AlgebraicNumber::nth_root(rad, deg).unwrap();
            assert_eq!(floor_of_root(&a).unwrap(), want.into(), "{rad}^(1/{deg})");
        }
        let phi = isolate_root(&p(&[-1, -1, 1]), &r(1), &r(2)).unwrap();
        assert_eq!(floor_of_root(&phi).unwrap(), 1.into());
        // wide interval, large root: x^2 - 10^12 - 7 in (0, 10^7)
        let big = isolate_root(&p(&[-1_000_000_000_007, 0, 1]), &r(0), &r(10_000_000)).unwrap();
        assert_eq!(floor_of_root(&big).unwrap(), 1_000_000.into());
    }

    #[test]
    fn even_root_of_negative() {
        assert_eq!(AlgebraicNumber::nth_root(-2, 4), Err(Error::NoRoot));
    }
}
