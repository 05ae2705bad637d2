//! Floating-point views of big integers and rationals.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Logarithm base used by the speed metrics and the `r_n` series.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LogBase {
    #[default]
    #[serde(rename = "e")]
    E,
    #[serde(rename = "2")]
    Two,
}

impl LogBase {
    pub const ENV_VAR: &'static str = "KHINCHIN_LOG_BASE";

    /// Converts a natural logarithm to this base.
    pub fn from_ln(self, ln: f64) -> f64 {
        match self {
            LogBase::E => ln,
            LogBase::Two => ln / std::f64::consts::LN_2,
        }
    }

    pub fn log(self, x: f64) -> f64 {
        self.from_ln(x.ln())
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "e" | "E" | "ln" => Ok(LogBase::E),
            "2" => Ok(LogBase::Two),
            other => Err(Error::InvalidInput(format!("log base must be e or 2, got {other:?}"))),
        }
    }

    /// Value of `KHINCHIN_LOG_BASE`, or the default when unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var(Self::ENV_VAR) {
            Ok(v) => Self::parse(&v),
            Err(_) => Ok(LogBase::default()),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LogBase::E => "e",
            LogBase::Two => "2",
        }
    }
}

/// Natural log of a positive integer from its bit length and top 64 bits.
pub fn ln_big(x: &BigInt) -> f64 {
    assert!(x.sign() == Sign::Plus, "ln of non-positive integer");
    let bits = x.bits();
    if bits <= 64 {
        return x.to_u64().expect("fits").to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 bits");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// `f64` value of a rational, robust for huge numerators and denominators.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    ratio_to_f64(x.numer(), x.denom())
}

/// `n / d` as `f64` without reducing the fraction first.
pub fn ratio_to_f64(n: &BigInt, d: &BigInt) -> f64 {
    if n.is_zero() {
        return 0.0;
    }
    let neg = (n.sign() == Sign::Minus) != (d.sign() == Sign::Minus);
    let (n, d) = (n.magnitude(), d.magnitude());
    let (nb, db) = (n.bits() as i64, d.bits() as i64);
    let top = |v: &num_bigint::BigUint, b: i64| -> f64 {
        let v = if b > 64 { v >> (b - 64) as u64 } else { v.clone() };
        v.to_f64().expect("64-bit value")
    };
    let exp = (nb.max(64) - 64) - (db.max(64) - 64);
    let exp = exp.clamp(-4000, 4000) as i32;
    // split the power so intermediate factors stay finite
    let v = top(n, nb) / top(d, db) * 2f64.powi(exp / 2) * 2f64.powi(exp - exp / 2);
    if neg {
        -v
    } else {
        v
    }
}

/// Neumaier-compensated sum.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
