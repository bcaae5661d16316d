//! Hurwitz and Riemann zeta at real arguments by Euler–Maclaurin summation,
//! plus the two periodic-coefficient Dirichlet series identities used by the
//! eta functions.

use num_bigint::BigInt;

use super::{bernoulli_even, frac, BigFloat, ExactRational};
use crate::error::{Error, Result};

/// Default working precision in decimal digits.
pub const DEFAULT_DIGITS: usize = 30;

/// Bernoulli correction terms used at or below 40 digits.
const MIN_BERNOULLI_TERMS: usize = 8;

fn bernoulli_terms(digits: usize) -> usize {
    MIN_BERNOULLI_TERMS.max(digits / 5)
}

/// `log10 |(s)_n|` for the rising factorial `s (s+1) ... (s+n-1)`.
fn log10_rising(s: f64, n: usize) -> f64 {
    (0..n).map(|j| (s + j as f64).abs().max(1e-300).log10()).sum()
}

/// `log10 |B_{2m}/(2m)!|`, from `|B_{2m}| / (2m)! ~ 2 / (2 pi)^{2m}`.
fn log10_bernoulli_ratio(m: usize) -> f64 {
    2f64.log10() - (2 * m) as f64 * (2.0 * std::f64::consts::PI).log10()
}

/// Bound on the Euler–Maclaurin remainder after `m` correction terms with
/// shift `n`, for real `s` (as log10).
fn log10_remainder(s: f64, a: f64, n: usize, m: usize) -> f64 {
    let x = n as f64 + a;
    log10_bernoulli_ratio(m + 1) + log10_rising(s, 2 * m + 1) - (s + 2.0 * m as f64 + 1.0) * x.log10()
}

/// Picks the shift index: start from `max(digits, 2|s|)` and grow until the
/// remainder bound meets the target.
fn choose_shift(s: f64, a: f64, digits: usize, m: usize) -> (usize, f64) {
    let target = -(digits as f64) - 2.0;
    let mut n = digits.max((2.0 * s.abs()).ceil() as usize).max(1);
    loop {
        let bound = log10_remainder(s, a, n, m);
        if bound <= target || n > 1_000_000 {
            return (n, 10f64.powf(bound));
        }
        n += n / 2 + 1;
    }
}

fn check_pole(s: &BigFloat, digits: usize) -> Result<()> {
    let one = BigFloat::from_i64(1, digits);
    let d = s.abs_diff(&one);
    if d < 10f64.powi(-(digits as i32)) {
        return Err(Error::NearPole(digits));
    }
    Ok(())
}

/// Hurwitz zeta `ζ(s, a) = Σ_{n≥0} (n + a)^{-s}` for real `s ≠ 1`, `a > 0`.
///
/// At `s = 0` and `s = -1` the closed forms `1/2 - a` and
/// `-1/12 + a(1-a)/2` are returned exactly.
pub fn hurwitz_zeta(s: &BigFloat, a: &ExactRational, digits: usize) -> Result<BigFloat> {
    if !a.is_positive() {
        return Err(Error::ZetaDomain(format!("a = {a} must be positive")));
    }
    check_pole(s, digits)?;
    match s.as_integer() {
        Some(0) => return Ok(BigFloat::from_rational(&(ExactRational::half() - a), digits)),
        Some(-1) => {
            let v = ExactRational::frac_of(-1, 12) + a * &(ExactRational::one() - a) / 2;
            return Ok(BigFloat::from_rational(&v, digits));
        }
        _ => {}
    }
    let sf = s.to_f64();
    let m = bernoulli_terms(digits);
    let (n, bound) = choose_shift(sf, a.to_f64(), digits, m);
    let s = s.with_digits(digits);

    let mut acc = BigFloat::from_i64(0, digits);
    let int_exp = s.as_integer();
    for k in 0..n {
        let base = a + ExactRational::from_integer(k as i64);
        let term = match int_exp {
            // exact rational power, rounded once
            Some(e) if e.unsigned_abs() <= 64 => {
                BigFloat::from_rational(&base.pow(-(e as i32)), digits)
            }
            _ => BigFloat::powf(&BigFloat::from_rational(&base, digits), &(-&s)),
        };
        acc = &acc + &term;
    }

    let shifted = a + ExactRational::from_integer(n as i64);
    let x = BigFloat::from_rational(&shifted, digits);
    // x^{-s}
    let x_pow = BigFloat::powf(&x, &(-&s));
    let one = BigFloat::from_i64(1, digits);
    let s_minus_1 = &s - &one;
    // x^{1-s}/(s-1)
    let tail = (&x_pow * &x)
        .checked_div(&s_minus_1)
        .ok_or(Error::NearPole(digits))?;
    acc = &acc + &tail;
    acc = &acc + &(&x_pow * &BigFloat::from_rational(&ExactRational::half(), digits));

    let bern = bernoulli_even(m);
    let inv_x2 = BigFloat::from_rational(&(&shifted * &shifted).recip()?, digits);
    // x^{-s-1}
    let mut power = x_pow
        .checked_div(&x)
        .ok_or_else(|| Error::ZetaDomain("shifted argument vanished".into()))?;
    // (s)_1 = s
    let mut rising = s.clone();
    let mut factorial = BigInt::from(1);
    for (idx, b) in bern.iter().enumerate() {
        let k = idx + 1;
        let two_k = 2 * k as i64;
        factorial *= (two_k - 1) * two_k;
        let coeff = BigFloat::from_rational(&(b / &ExactRational::from_integer(factorial.clone())), digits);
        acc = &acc + &(&(&coeff * &rising) * &power);
        // advance (s)_{2k-1} -> (s)_{2k+1} and x^{-s-2k+1} -> x^{-s-2k-1}
        let f1 = &s + &BigFloat::from_i64(two_k - 1, digits);
        let f2 = &s + &BigFloat::from_i64(two_k, digits);
        rising = &(&rising * &f1) * &f2;
        power = &power * &inv_x2;
    }
    let err = acc.error_bound() + bound;
    Ok(acc.with_error(err))
}

/// Riemann zeta as `ζ(s, 1)`.
pub fn riemann_zeta(s: &BigFloat, digits: usize) -> Result<BigFloat> {
    hurwitz_zeta(s, &ExactRational::one(), digits)
}

fn pow_neg(p: usize, s: &BigFloat, digits: usize) -> BigFloat {
    let base = BigFloat::from_i64(p as i64, digits);
    BigFloat::powf(&base, &(-s))
}

/// `Σ_{n≥1} f(n)/n^s` for a `p`-periodic `f`, evaluated as
/// `Σ_{r=1}^{p} f(r) p^{-s} ζ(s, r/p)`. The table lists `f(1), ..., f(p)`.
pub fn periodic_dirichlet_split(
    f: &[ExactRational],
    s: &BigFloat,
    digits: usize,
) -> Result<BigFloat> {
    let p = f.len();
    if p == 0 {
        return Err(Error::ZetaDomain("empty period table".into()));
    }
    let scale = pow_neg(p, s, digits);
    let mut acc = BigFloat::from_i64(0, digits);
    for (idx, fr) in f.iter().enumerate() {
        if fr.is_zero() {
            continue;
        }
        let r = idx as i64 + 1;
        let z = hurwitz_zeta(s, &ExactRational::frac_of(r, p as i64), digits)?;
        acc = &acc + &(&BigFloat::from_rational(fr, digits) * &z);
    }
    Ok(&acc * &scale)
}

/// `Σ_{μ ∈ ρ+Z} sign(μ) f(μ-ρ) |μ|^{-s}` for a `p`-periodic `f` and
/// `0 < ρ < 1`, evaluated through Hurwitz zetas. The table lists
/// `f(0), ..., f(p-1)`.
pub fn signed_periodic_split(
    f: &[ExactRational],
    rho: &ExactRational,
    s: &BigFloat,
    digits: usize,
) -> Result<BigFloat> {
    if !(rho.is_positive() && *rho < 1) {
        return Err(Error::RhoOutOfRange(rho.to_string()));
    }
    let p = f.len();
    if p == 0 {
        return Err(Error::ZetaDomain("empty period table".into()));
    }
    let scale = pow_neg(p, s, digits);
    let mut acc = BigFloat::from_i64(0, digits);
    for (k, fk) in f.iter().enumerate() {
        if fk.is_zero() {
            continue;
        }
        let shift = frac(&((ExactRational::from_integer(k as i64) + rho) / p as i64));
        let plus = hurwitz_zeta(s, &shift, digits)?;
        let minus = hurwitz_zeta(s, &(ExactRational::one() - &shift), digits)?;
        acc = &acc + &(&BigFloat::from_rational(fk, digits) * &(&plus - &minus));
    }
    Ok(&acc * &scale)
}
