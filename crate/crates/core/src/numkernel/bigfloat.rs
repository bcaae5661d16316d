use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use dashu_float::DBig;
use dashu_int::{IBig, UBig};
use num_bigint::{BigInt, Sign};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ExactRational;
use crate::error::ParseError;

/// Extra decimal digits carried internally beyond the requested precision.
pub(crate) const GUARD_DIGITS: usize = 12;

/// A decimal floating-point number at an explicit precision, carrying an
/// estimate of its absolute error.
#[derive(Clone)]
pub struct BigFloat {
    value: DBig,
    digits: usize,
    err: f64,
}

pub(crate) fn to_ibig(n: &BigInt) -> IBig {
    let (sign, bytes) = n.to_bytes_le();
    let mag = IBig::from(UBig::from_le_bytes(&bytes));
    if sign == Sign::Minus {
        -mag
    } else {
        mag
    }
}

fn working(digits: usize) -> usize {
    digits + GUARD_DIGITS
}

impl BigFloat {
    pub fn from_rational(x: &ExactRational, digits: usize) -> Self {
        let p = working(digits);
        let n = DBig::from_parts(to_ibig(x.numer()), 0).with_precision(p).value();
        let d = DBig::from_parts(to_ibig(x.denom()), 0).with_precision(p).value();
        let value = n / d;
        let err = if x.denom() == &BigInt::from(1) {
            0.0
        } else {
            ulp_estimate(&value, p)
        };
        BigFloat { value, digits, err }
    }

    pub fn from_i64(n: i64, digits: usize) -> Self {
        BigFloat {
            value: DBig::from_parts(IBig::from(n), 0)
                .with_precision(working(digits))
                .value(),
            digits,
            err: 0.0,
        }
    }

    pub(crate) fn from_dbig(value: DBig, digits: usize, err: f64) -> Self {
        let value = value.with_precision(working(digits)).value();
        BigFloat { value, digits, err }
    }

    /// Requested precision in decimal digits.
    pub fn digits(&self) -> usize {
        self.digits
    }

    /// Estimated bound on the absolute error of this value.
    pub fn error_bound(&self) -> f64 {
        self.err
    }

    pub fn with_error(mut self, err: f64) -> Self {
        self.err = err;
        self
    }

    /// Re-express at a different precision; the error estimate is kept.
    pub fn with_digits(&self, digits: usize) -> Self {
        BigFloat::from_dbig(self.value.clone(), digits, self.err)
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().value()
    }

    pub fn is_zero(&self) -> bool {
        self.value == DBig::ZERO
    }

    /// The exact integer value, if this number is one.
    pub fn as_integer(&self) -> Option<i64> {
        if self.value.fract() == DBig::ZERO {
            let t = self.value.trunc();
            let f = t.to_f64().value();
            if f.abs() < 9.0e15 {
                return Some(f as i64);
            }
        }
        None
    }

    pub fn abs(&self) -> Self {
        let value = if self.value < DBig::ZERO {
            -self.value.clone()
        } else {
            self.value.clone()
        };
        BigFloat {
            value,
            digits: self.digits,
            err: self.err,
        }
    }

    /// `|self - other|` as a float, for tolerance checks.
    pub fn abs_diff(&self, other: &BigFloat) -> f64 {
        (self - other).abs().to_f64()
    }

    /// `|self - x|` against an exact value.
    pub fn abs_diff_rational(&self, x: &ExactRational) -> f64 {
        self.abs_diff(&BigFloat::from_rational(x, self.digits.max(30)))
    }

    pub fn ln(&self) -> Self {
        let value = self.value.ln();
        let rel = self.err / self.to_f64().abs();
        let err = rel + ulp_estimate(&value, working(self.digits));
        BigFloat {
            value,
            digits: self.digits,
            err,
        }
    }

    pub fn exp(&self) -> Self {
        let value = self.value.exp();
        let mag = value.to_f64().value().abs();
        let err = mag * self.err + ulp_estimate(&value, working(self.digits));
        BigFloat {
            value,
            digits: self.digits,
            err,
        }
    }

    /// `base^exponent` for positive `base`; integer exponents take the exact path.
    pub fn powf(base: &BigFloat, exponent: &BigFloat) -> Self {
        if let Some(k) = exponent.as_integer() {
            return base.powi(k);
        }
        (exponent * &base.ln()).exp()
    }

    pub fn powi(&self, k: i64) -> Self {
        let value = self.value.powi(IBig::from(k));
        let mag = value.to_f64().value().abs();
        let base = self.to_f64().abs();
        let rel = if base > 0.0 {
            (k.unsigned_abs() as f64) * self.err / base
        } else {
            0.0
        };
        BigFloat {
            err: mag * rel + ulp_estimate(&value, working(self.digits)),
            value,
            digits: self.digits,
        }
    }

    pub fn checked_div(&self, rhs: &BigFloat) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let value = &self.value / &rhs.value;
        let a = self.to_f64().abs();
        let b = rhs.to_f64().abs();
        let err = self.err / b + a * rhs.err / (b * b) + ulp_estimate(&value, working(self.digits));
        Some(BigFloat {
            value,
            digits: self.digits.min(rhs.digits),
            err,
        })
    }
}

fn ulp_estimate(v: &DBig, precision: usize) -> f64 {
    let mag = v.to_f64().value().abs();
    if mag == 0.0 {
        0.0
    } else {
        mag * 10f64.powi(-(precision as i32) + 1)
    }
}

impl Add for &BigFloat {
    type Output = BigFloat;
    fn add(self, rhs: &BigFloat) -> BigFloat {
        let value = &self.value + &rhs.value;
        let p = working(self.digits.min(rhs.digits));
        BigFloat {
            err: self.err + rhs.err + ulp_estimate(&value, p),
            value,
            digits: self.digits.min(rhs.digits),
        }
    }
}

impl Add for BigFloat {
    type Output = BigFloat;
    fn add(self, rhs: BigFloat) -> BigFloat {
        &self + &rhs
    }
}

impl Sub for &BigFloat {
    type Output = BigFloat;
    fn sub(self, rhs: &BigFloat) -> BigFloat {
        self + &(-rhs)
    }
}

impl Sub for BigFloat {
    type Output = BigFloat;
    fn sub(self, rhs: BigFloat) -> BigFloat {
        &self - &rhs
    }
}

impl Mul for &BigFloat {
    type Output = BigFloat;
    fn mul(self, rhs: &BigFloat) -> BigFloat {
        let value = &self.value * &rhs.value;
        let p = working(self.digits.min(rhs.digits));
        let err = self.to_f64().abs() * rhs.err
            + rhs.to_f64().abs() * self.err
            + self.err * rhs.err
            + ulp_estimate(&value, p);
        BigFloat {
            value,
            digits: self.digits.min(rhs.digits),
            err,
        }
    }
}

impl Mul for BigFloat {
    type Output = BigFloat;
    fn mul(self, rhs: BigFloat) -> BigFloat {
        &self * &rhs
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat {
            value: -self.value.clone(),
            digits: self.digits,
            err: self.err,
        }
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        -&self
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

/// Scientific notation rounded to the requested digits, tagged with the
/// precision: `1.644934066848226436472415166646e0@30`.
impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown = self.value.clone().with_precision(self.digits.max(1)).value();
        write!(f, "{:e}@{}", shown, self.digits)
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (err <= {:.1e})", self, self.err)
    }
}

impl FromStr for BigFloat {
    type Err = ParseError;

    /// Accepts `<decimal>@<digits>` or a bare decimal (30 digits).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let (num, digits) = match t.split_once('@') {
            Some((n, d)) => {
                let digits = d.trim().parse::<usize>().map_err(|_| {
                    ParseError::new(s, n.len() + 1, "precision tag must be a positive integer")
                })?;
                (n, digits)
            }
            None => (t, super::DEFAULT_DIGITS),
        };
        if digits == 0 {
            return Err(ParseError::new(s, num.len() + 1, "precision must be positive"));
        }
        let value = DBig::from_str(num.trim())
            .map_err(|_| ParseError::new(s, 0, format!("`{}` is not a decimal number", num.trim())))?;
        Ok(BigFloat::from_dbig(value, digits, 0.0))
    }
}

impl Serialize for BigFloat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BigFloat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
