//! JSON number specifications.
//!
//! ```json
//! {"kind":"nthroot","radicand":2,"degree":3}
//! {"kind":"poly","coeffs":[-1,-1,0,1],"interval":["1.3","1.4"]}
//! ```
//!
//! Integers may be given as JSON numbers or decimal strings; interval
//! endpoints are decimal strings parsed exactly.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use serde::{Deserialize, Serialize};

use super::algebraic::{isolate_root, AlgebraicNumber};
use super::poly::IntegerPolynomial;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum NumberSpec {
    Nthroot {
        radicand: IntValue,
        degree: usize,
    },
    Poly {
        coeffs: Vec<IntValue>,
        interval: [String; 2],
    },
}

/// An integer written either as a JSON number or as a string of digits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntValue {
    Small(i64),
    Text(String),
}

impl IntValue {
    pub fn to_bigint(&self) -> Result<BigInt> {
        match self {
            IntValue::Small(v) => Ok((*v).into()),
            IntValue::Text(s) => BigInt::from_str(s.trim())
                .map_err(|_| Error::InvalidInput(format!("not an integer: {s:?}"))),
        }
    }
}

impl From<i64> for IntValue {
    fn from(v: i64) -> Self {
        IntValue::Small(v)
    }
}

impl NumberSpec {
    pub fn nthroot(radicand: i64, degree: usize) -> Self {
        NumberSpec::Nthroot {
            radicand: radicand.into(),
            degree,
        }
    }

    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::InvalidInput(format!("number spec: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("number spec serializes")
    }

    pub fn resolve(&self) -> Result<AlgebraicNumber> {
        match self {
            NumberSpec::Nthroot { radicand, degree } => {
                AlgebraicNumber::nth_root(radicand.to_bigint()?, *degree)
            }
            NumberSpec::Poly { coeffs, interval } => {
                let coeffs = coeffs
                    .iter()
                    .map(IntValue::to_bigint)
                    .collect::<Result<Vec<_>>>()?;
                let poly = IntegerPolynomial::new(coeffs)?;
                let lo = parse_decimal(&interval[0])?;
                let hi = parse_decimal(&interval[1])?;
                isolate_root(&poly, &lo, &hi)
            }
        }
    }

    /// Short label such as `2^(1/3)`.
    pub fn label(&self) -> String {
        match self {
            NumberSpec::Nthroot { radicand, degree } => {
                let r = match radicand {
                    IntValue::Small(v) => v.to_string(),
                    IntValue::Text(s) => s.clone(),
                };
                format!("{r}^(1/{degree})")
            }
            NumberSpec::Poly { .. } => self.to_json(),
        }
    }
}

impl fmt::Display for NumberSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Exact value of a decimal string such as `-1.25`, `3e-4` or `7/3`.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a decimal number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let mut value = BigRational::from_integer(BigInt::from_str(&digits).map_err(|_| bad())?);
    let shift = exp - frac.len() as i64;
    let ten = BigRational::from_integer(10.into());
    let factor: BigRational = Pow::pow(&ten, shift.unsigned_abs());
    if shift >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    if neg {
        value = -value;
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::cf_expand;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn decimals() {
        assert_eq!(parse_decimal("1.41").unwrap(), rat(141, 100));
        assert_eq!(parse_decimal("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_decimal("3e-4").unwrap(), rat(3, 10_000));
        assert_eq!(parse_decimal("2.5E2").unwrap(), rat(250, 1));
        assert_eq!(parse_decimal("7/3").unwrap(), rat(7, 3));
        assert_eq!(parse_decimal(".5").unwrap(), rat(1, 2));
        for bad in ["", "abc", "1.2.3", "1/0", "-", "1e"] {
            assert!(parse_decimal(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn nthroot_spec() {
        let spec = NumberSpec::parse(r#"{"kind":"nthroot","radicand":2,"degree":3}"#).unwrap();
        assert_eq!(spec, NumberSpec::nthroot(2, 3));
        let a = spec.resolve().unwrap();
        let cf = cf_expand(&a, 4).unwrap();
        assert_eq!(cf.coeffs, vec![3, 1, 5]);
        assert_eq!(spec.label(), "2^(1/3)");
    }

    #[test]
    fn poly_spec_with_big_coefficients() {
        let spec = NumberSpec::parse(
            r#"{"kind":"poly","coeffs":["-100000000000000000000000",0,1],"interval":["1e11","1e12"]}"#,
        )
        .unwrap();
        let a = spec.resolve().unwrap();
        // sqrt(10^23) = 316227766016.8379...
        assert_eq!(cf_expand(&a, 1).unwrap().b0, BigInt::from(316_227_766_016i64));
    }

    #[test]
    fn malformed_specs() {
        assert!(NumberSpec::parse(r#"{"kind":"cube"}"#).is_err());
        assert!(NumberSpec::parse(r#"{"kind":"nthroot","radicand":2}"#).is_err());
        let ambiguous = NumberSpec::parse(
            r#"{"kind":"poly","coeffs":[-2,0,1],"interval":["-2","2"]}"#,
        )
        .unwrap();
        assert_eq!(ambiguous.resolve(), Err(Error::AmbiguousRoot(2)));
    }
}
