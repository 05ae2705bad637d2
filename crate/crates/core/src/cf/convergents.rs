//! Convergents `A(n)/B(n)` and certified enclosures of `|a - A(n)/B(n)|`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::algebraic::AlgebraicNumber;
use super::expand::{cf_expand, CFExpansion};
use crate::error::{invalid, Error, Result};

/// Convergent numerators and denominators for `n = 0..=upto`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentSequence {
    pairs: Vec<(BigInt, BigInt)>,
}

impl ConvergentSequence {
    pub fn pairs(&self) -> &[(BigInt, BigInt)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn numerator(&self, n: usize) -> &BigInt {
        &self.pairs[n].0
    }

    pub fn denominator(&self, n: usize) -> &BigInt {
        &self.pairs[n].1
    }

    /// `B(n-1)`, with `B(-1) = 0`.
    pub fn prev_denominator(&self, n: usize) -> BigInt {
        match n {
            0 => BigInt::zero(),
            _ => self.pairs[n - 1].1.clone(),
        }
    }

    pub fn as_rational(&self, n: usize) -> BigRational {
        BigRational::new(self.pairs[n].0.clone(), self.pairs[n].1.clone())
    }
}

/// `A(n) = b_n A(n-1) + A(n-2)`, `B(n) = b_n B(n-1) + B(n-2)` from
/// `A(-1) = 1, A(0) = b0, B(-1) = 0, B(0) = 1`.
pub fn convergents(cf: &CFExpansion, upto: usize) -> Result<ConvergentSequence> {
    cf.require(upto)?;
    let mut pairs = Vec::with_capacity(upto + 1);
    let (mut a_prev, mut b_prev) = (BigInt::one(), BigInt::zero());
    let (mut a, mut b) = (cf.b0.clone(), BigInt::one());
    pairs.push((a.clone(), b.clone()));
    for &q in &cf.coeffs[..upto] {
        let a_next = &a * q + &a_prev;
        let b_next = &b * q + &b_prev;
        a_prev = std::mem::replace(&mut a, a_next);
        b_prev = std::mem::replace(&mut b, b_next);
        pairs.push((a.clone(), b.clone()));
    }
    Ok(ConvergentSequence { pairs })
}

/// Certified enclosure `lo <= |a - A(n)/B(n)| <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorEnclosure {
    pub lo: BigRational,
    pub hi: BigRational,
    /// Tail coefficients used to bound the complete quotient.
    pub depth: usize,
}

impl ErrorEnclosure {
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// `hi / lo`
    pub fn ratio(&self) -> BigRational {
        &self.hi / &self.lo
    }
}

/// Minimum tail depth before adaptive tightening kicks in.
pub const DEFAULT_TAIL_DEPTH: usize = 10;

/// Target for `hi / lo - 1`.
pub const ENCLOSURE_RELATIVE_WIDTH: f64 = 1.0 / (1u64 << 40) as f64;

/// Bounds on the complete quotient `[t0; t1, ..., t_{k-1}, ζ]`, `ζ > 1`.
///
/// The value lies strictly between `p/q` (ζ → ∞) and `(p + p')/(q + q')`
/// (ζ → 1), where `p/q`, `p'/q'` are the last two convergents of the tail.
pub(crate) fn complete_quotient_bounds(tail: &[u64]) -> (BigRational, BigRational) {
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let (mut p, mut q) = (BigInt::from(tail[0]), BigInt::one());
    for &t in &tail[1..] {
        let pn = &p * t + &p_prev;
        let qn = &q * t + &q_prev;
        p_prev = std::mem::replace(&mut p, pn);
        q_prev = std::mem::replace(&mut q, qn);
    }
    let a = BigRational::new(p.clone(), q.clone());
    let b = BigRational::new(p + p_prev, q + q_prev);
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Enclosure of `|a - A(n)/B(n)| = 1 / (B(n)·(α·B(n) + B(n-1)))` given the
/// tail `b_{n+1}, b_{n+2}, ...` that determines `α`.
pub(crate) fn enclosure_from_tail(
    b_n: &BigInt,
    b_prev: &BigInt,
    tail: &[u64],
) -> ErrorEnclosure {
    let (alpha_lo, alpha_hi) = complete_quotient_bounds(tail);
    let bn = BigRational::from_integer(b_n.clone());
    let bp = BigRational::from_integer(b_prev.clone());
    let lo = (&bn * (&alpha_hi * &bn + &bp)).recip();
    let hi = (&bn * (&alpha_lo * &bn + &bp)).recip();
    ErrorEnclosure {
        lo,
        hi,
        depth: tail.len(),
    }
}

fn tight_enough(enc: &ErrorEnclosure) -> bool {
    // hi/lo < 1 + 2^-40  <=>  2^40 (hi - lo) < lo
    let scaled = (&enc.hi - &enc.lo) * BigRational::from_integer(BigInt::one() << 40);
    scaled < enc.lo
}

/// Tightens adaptively, starting at `min_depth` tail coefficients and
/// doubling until the ratio target is met or the tail runs out.
pub(crate) fn tightened_enclosure(
    b_n: &BigInt,
    b_prev: &BigInt,
    tail: &[u64],
    min_depth: usize,
) -> Option<ErrorEnclosure> {
    let mut depth = min_depth.max(1);
    loop {
        if depth > tail.len() {
            return None;
        }
        let enc = enclosure_from_tail(b_n, b_prev, &tail[..depth]);
        if tight_enough(&enc) {
            return Some(enc);
        }
        depth *= 2;
    }
}

/// Certified enclosure of `|a - A(n)/B(n)|` with relative width below `2^-40`.
///
/// Uses the coefficients already in `cf` and expands `num` further when the
/// tail is too short.
pub fn approximation_error(
    num: &AlgebraicNumber,
    cf: &CFExpansion,
    n: usize,
) -> Result<ErrorEnclosure> {
    approximation_error_with_depth(num, cf, n, DEFAULT_TAIL_DEPTH)
}

pub fn approximation_error_with_depth(
    num: &AlgebraicNumber,
    cf: &CFExpansion,
    n: usize,
    min_depth: usize,
) -> Result<ErrorEnclosure> {
    if min_depth == 0 {
        return invalid("tail depth must be positive");
    }
    let mut owned;
    let mut cf = cf;
    let mut want = n + min_depth.max(1);
    // The certified length can only grow; stop at a generous ceiling.
    let ceiling = n + 64 * min_depth.max(1) + 512;
    loop {
        if cf.certified_len() < want {
            owned = cf_expand(num, want + 1)?;
            cf = &owned;
        }
        let conv = convergents(cf, n)?;
        let tail = &cf.coeffs[n..];
        if let Some(enc) = tightened_enclosure(
            conv.denominator(n),
            &conv.prev_denominator(n),
            tail,
            min_depth,
        ) {
            return Ok(enc);
        }
        if want >= ceiling {
            return Err(Error::InsufficientExpansion {
                needed: want * 2,
                available: cf.certified_len(),
            });
        }
        want = (want - n) * 2 + n;
    }
}
