//! Laurent polynomials in one variable `T` with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

/// `Σ a_n T^n` over finitely many `n ∈ Z`; zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c·T^n`.
    pub fn monomial(coeff: i64, exponent: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, coeff);
        p
    }

    pub fn add_term(&mut self, exponent: i64, coeff: i64) {
        let entry = self.terms.entry(exponent).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&exponent);
        }
    }

    /// `a_n`.
    pub fn coefficient(&self, exponent: i64) -> i64 {
        self.terms.get(&exponent).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Sum of the coefficients, `P(1)`.
    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }

    /// `T^k · P`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    /// `P(T^{-1})`.
    pub fn mirror(&self) -> Self {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    /// Every stored exponent is odd.
    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|e| e.rem_euclid(2) == 1)
    }

    /// The exponent multiset, each exponent repeated by its coefficient.
    /// Returns `None` if some coefficient is negative.
    pub fn exponent_multiset(&self) -> Option<Vec<i64>> {
        let mut out = Vec::new();
        for (&e, &c) in &self.terms {
            if c < 0 {
                return None;
            }
            out.extend(std::iter::repeat_n(e, c as usize));
        }
        Some(out)
    }

    /// LaTeX body, e.g. `2T+T^{3}+T^{-1}` in ascending order.
    pub fn to_latex(&self) -> String {
        self.render(|e| if e == 1 { "T".into() } else { format!("T^{{{e}}}") }, "+", "-")
    }

    fn render(&self, power: impl Fn(i64) -> String, plus: &str, minus: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (&e, &c)) in self.terms.iter().enumerate() {
            let sign = match (i, c < 0) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => minus,
                (_, false) => plus,
            };
            out.push_str(sign);
            let mag = c.unsigned_abs();
            if e == 0 {
                out.push_str(&mag.to_string());
                continue;
            }
            if mag != 1 {
                out.push_str(&mag.to_string());
            }
            out.push_str(&power(e));
        }
        out
    }
}

/// `T^-1 + T + T^5`, ascending, with `0` for the zero polynomial.
impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.render(|e| if e == 1 { "T".into() } else { format!("T^{e}") }, " + ", " - ");
        f.write_str(&s)
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for LaurentPolynomial {
    type Err = ParseError;

    /// Parses sums of terms such as `2T + T^3 - T^-1 + 4`, with optional
    /// braces around exponents.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace() && *c != '{' && *c != '}').collect();
        let mut p = LaurentPolynomial::zero();
        if cleaned == "0" {
            return Ok(p);
        }
        if cleaned.is_empty() {
            return Err(ParseError::new(s, 0, "empty polynomial"));
        }
        let bytes = cleaned.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let start = i;
            let mut sign = 1;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -1;
                }
                i += 1;
            } else if start != 0 {
                return Err(ParseError::new(s, start, "expected + or -"));
            }
            let num_start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coeff: i64 = if i > num_start {
                cleaned[num_start..i]
                    .parse()
                    .map_err(|_| ParseError::new(s, num_start, "coefficient too large"))?
            } else {
                1
            };
            let mut exponent = 0;
            if i < bytes.len() && bytes[i] == b'T' {
                i += 1;
                exponent = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let e_start = i;
                    if i < bytes.len() && bytes[i] == b'-' {
                        i += 1;
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    exponent = cleaned[e_start..i]
                        .parse()
                        .map_err(|_| ParseError::new(s, e_start, "expected an integer exponent"))?;
                }
            } else if i == num_start {
                return Err(ParseError::new(s, i, "expected a coefficient or T"));
            }
            p.add_term(exponent, sign * coeff);
        }
        Ok(p)
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (&e, &c) in &rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl FromIterator<i64> for LaurentPolynomial {
    /// Builds `Σ T^{n_i}` from a list of exponents.
    fn from_iter<I: IntoIterator<Item = i64>>(iter: I) -> Self {
        let mut p = LaurentPolynomial::zero();
        for e in iter {
            p.add_term(e, 1);
        }
        p
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
