//! Exact rational numbers backed by arbitrary-precision integers.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, ParseError};

/// An exact fraction `p/q` with `q > 0`, always stored in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, Error> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactRational(BigRational::new(numer.into(), denom)))
    }

    /// Panics on a zero denominator; for constants known to be valid.
    pub fn frac_of(numer: i64, denom: i64) -> Self {
        Self::new(numer, denom).expect("nonzero denominator")
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn half() -> Self {
        Self::frac_of(1, 2)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn signum(&self) -> i32 {
        if self.0.is_positive() {
            1
        } else if self.0.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn abs(&self) -> Self {
        ExactRational(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    pub fn ceil(&self) -> BigInt {
        -((-self.0.numer()).div_floor(self.0.denom()))
    }

    pub fn recip(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactRational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactRational(&self.0 / &rhs.0))
    }

    pub fn pow(&self, exp: i32) -> Self {
        ExactRational(num_traits::Pow::pow(&self.0, exp))
    }

    /// The numerator as `i64` when the value is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        ExactRational::from_integer(n)
    }
}

impl From<BigInt> for ExactRational {
    fn from(n: BigInt) -> Self {
        ExactRational::from_integer(n)
    }
}

impl From<BigRational> for ExactRational {
    fn from(r: BigRational) -> Self {
        ExactRational(r)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactRational {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let offset = s.len() - s.trim_start().len();
        let parse_int = |part: &str, at: usize| -> Result<BigInt, ParseError> {
            let p = part.trim();
            if p.is_empty() {
                return Err(ParseError::new(s, at, "expected an integer"));
            }
            p.parse::<BigInt>()
                .map_err(|_| ParseError::new(s, at, format!("`{p}` is not an integer")))
        };
        match t.split_once('/') {
            None => Ok(ExactRational::from_integer(parse_int(t, offset)?)),
            Some((n, d)) => {
                let numer = parse_int(n, offset)?;
                let at = offset + n.len() + 1;
                let denom = parse_int(d, at)?;
                if denom.is_zero() {
                    return Err(ParseError::new(s, at, "zero denominator"));
                }
                Ok(ExactRational(BigRational::new(numer, denom)))
            }
        }
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(rhs.0))
            }
        }
        impl $trait<i64> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: i64) -> ExactRational {
                ExactRational((&self.0).$method(BigRational::from_integer(rhs.into())))
            }
        }
        impl $trait<i64> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: i64) -> ExactRational {
                ExactRational(self.0.$method(BigRational::from_integer(rhs.into())))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

// Division by zero panics, as for the primitive types; use `checked_div` on
// untrusted input.
forward_binop!(Div, div);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl Neg for &ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-&self.0)
    }
}

impl AddAssign<&ExactRational> for ExactRational {
    fn add_assign(&mut self, rhs: &ExactRational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<ExactRational> for ExactRational {
    fn add_assign(&mut self, rhs: ExactRational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&ExactRational> for ExactRational {
    fn sub_assign(&mut self, rhs: &ExactRational) {
        self.0 -= &rhs.0;
    }
}

impl SubAssign<ExactRational> for ExactRational {
    fn sub_assign(&mut self, rhs: ExactRational) {
        self.0 -= rhs.0;
    }
}

impl PartialEq<i64> for ExactRational {
    fn eq(&self, other: &i64) -> bool {
        self.0.is_integer() && self.0.numer() == &BigInt::from(*other)
    }
}

impl PartialOrd<i64> for ExactRational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::from_integer((*other).into())))
    }
}

impl Sum for ExactRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a ExactRational> for ExactRational {
    fn sum<I: Iterator<Item = &'a ExactRational>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |acc, x| acc + x)
    }
}

/// Shorthand for building exact constants in code and tests.
#[macro_export]
macro_rules! q {
    ($n:expr) => {
        $crate::ExactRational::from_integer($n as i64)
    };
    ($n:expr, $d:expr) => {
        $crate::ExactRational::frac_of($n as i64, $d as i64)
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stored_reduced() {
        let r = ExactRational::new(6, -8).unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(4));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(ExactRational::new(1, 0), Err(Error::DivisionByZero)));
        assert!("3/0".parse::<ExactRational>().is_err());
        assert!(q!(1).checked_div(&q!(0)).is_err());
    }

    #[test]
    fn parse_and_display() {
        for s in ["0", "-3/4", "5", "22/7"] {
            let r: ExactRational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!(" 4/6".parse::<ExactRational>().unwrap(), q!(2, 3));
        let err = "1/x".parse::<ExactRational>().unwrap_err();
        assert_eq!(err.position, 2);
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(q!(-4, 3).floor(), BigInt::from(-2));
        assert_eq!(q!(-4, 3).ceil(), BigInt::from(-1));
        assert_eq!(q!(5, 2).floor(), BigInt::from(2));
        assert_eq!(q!(-2).floor(), BigInt::from(-2));
    }

    #[test]
    fn json_roundtrip() {
        let r = q!(-91, 180);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, "\"-91/180\"");
        let back: ExactRational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
