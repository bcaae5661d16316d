//! Exact and numeric kernels: rationals, the fractional-part family of
//! periodic functions, Bernoulli numbers and Hurwitz zeta evaluation.

mod bigfloat;
mod rational;
mod zeta;

pub use bigfloat::BigFloat;
pub use rational::ExactRational;
pub use zeta::{
    hurwitz_zeta, periodic_dirichlet_split, riemann_zeta, signed_periodic_split,
    DEFAULT_DIGITS,
};

use num_bigint::BigInt;

/// Fractional part `{x}` in `[0, 1)`.
pub fn frac(x: &ExactRational) -> ExactRational {
    x - ExactRational::from_integer(x.floor())
}

/// The sawtooth `((x))`: `{x} - 1/2` off the integers and `0` on them.
pub fn sawtooth(x: &ExactRational) -> ExactRational {
    if x.is_integer() {
        ExactRational::zero()
    } else {
        frac(x) - ExactRational::half()
    }
}

/// `B_2({x})` with `B_2(z) = z^2 - z + 1/6`.
pub fn psi2(x: &ExactRational) -> ExactRational {
    let z = frac(x);
    &z * &z - &z + ExactRational::frac_of(1, 6)
}

/// `x mod m` in `0..m` for `m > 0`.
pub(crate) fn modulo(x: i64, m: i64) -> i64 {
    x.rem_euclid(m)
}

/// Inverse of `b` modulo `a`, in `0..a`. Requires `gcd(a, b) = 1`.
pub(crate) fn mod_inverse(b: i64, a: i64) -> Option<i64> {
    if a == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (a as i128, modulo(b, a) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(a as i128) as i64)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

/// Even-index Bernoulli numbers `B_2, B_4, ..., B_{2n}`.
///
/// Uses the Akiyama–Tanigawa transform, exact over the rationals.
pub fn bernoulli_even(n: usize) -> Vec<ExactRational> {
    let len = 2 * n + 1;
    let mut a: Vec<ExactRational> = Vec::with_capacity(len);
    let mut out = Vec::with_capacity(n);
    for m in 0..len {
        a.push(ExactRational::new(1, BigInt::from(m as u64 + 1)).unwrap());
        for j in (1..=m).rev() {
            let diff = &a[j - 1] - &a[j];
            a[j - 1] = diff * (j as i64);
        }
        // a[0] now holds B_m (with the B_1 = +1/2 convention, irrelevant here)
        if m >= 2 && m % 2 == 0 {
            out.push(a[0].clone());
        }
    }
    out
}
