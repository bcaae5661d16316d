//! Dedekind–Rademacher sums
//!
//! `s(β, α; x, y) = Σ_{r=1}^{α} ((x + β(r+y)/α)) (((r+y)/α))`
//!
//! with a direct O(α) evaluator, the two-case reciprocity function `R`, and a
//! Euclid-style evaluator that alternates shifts and reciprocity swaps.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::{frac, gcd, mod_inverse, psi2, sawtooth, ExactRational};

/// Validated arguments of `s(β, α; x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DRInput {
    pub beta: i64,
    pub alpha: i64,
    pub x: ExactRational,
    pub y: ExactRational,
}

impl DRInput {
    pub fn new(beta: i64, alpha: i64, x: ExactRational, y: ExactRational) -> Result<Self> {
        check_pair(beta, alpha)?;
        Ok(DRInput { beta, alpha, x, y })
    }

    /// The arguments of the reciprocal sum `s(α, β; y, x)`.
    pub fn swapped(&self) -> Result<Self> {
        DRInput::new(self.alpha, self.beta, self.y.clone(), self.x.clone())
    }
}

fn check_pair(beta: i64, alpha: i64) -> Result<()> {
    if alpha <= 0 {
        return Err(Error::NonPositiveModulus(alpha));
    }
    if gcd(beta, alpha) != 1 {
        return Err(Error::NotCoprime(beta, alpha));
    }
    Ok(())
}

/// The defining sum, term by term.
pub fn dr_sum_direct(input: &DRInput) -> ExactRational {
    let DRInput { beta, alpha, x, y } = input;
    (1..=*alpha)
        .map(|r| {
            let t = (y + r) / *alpha;
            sawtooth(&(x + &t * *beta)) * sawtooth(&t)
        })
        .sum()
}

/// `R(β, α; x, y) = s(β, α; x, y) + s(α, β; y, x)` in closed form. Requires
/// `β ≥ 1` so that the reciprocal sum is defined.
pub fn reciprocity_r(input: &DRInput) -> Result<ExactRational> {
    if input.beta < 1 {
        return Err(Error::NonPositiveModulus(input.beta));
    }
    Ok(reciprocity_unchecked(input.beta, input.alpha, &input.x, &input.y))
}

fn reciprocity_unchecked(beta: i64, alpha: i64, x: &ExactRational, y: &ExactRational) -> ExactRational {
    let ab = ExactRational::from_integer(alpha) * beta;
    if x.is_integer() && y.is_integer() {
        let num = ExactRational::from_integer(alpha * alpha + beta * beta + 1);
        return ExactRational::frac_of(-1, 4) + num / (ab * 12);
    }
    let mixed = psi2(&(y * beta + x * alpha));
    let bernoulli = psi2(y) * (beta * beta) + mixed + psi2(x) * (alpha * alpha);
    sawtooth(x) * sawtooth(y) + bernoulli / (ab * 2)
}

/// Same value as [`dr_sum_direct`], in O(log α) reduction steps.
pub fn dr_sum_fast(input: &DRInput) -> ExactRational {
    let (mut beta, mut alpha) = (input.beta, input.alpha);
    let mut x = frac(&input.x);
    let mut y = frac(&input.y);
    let mut sign = 1i64;
    let mut acc = ExactRational::zero();
    loop {
        if alpha == 1 {
            let base = sawtooth(&(&y * beta + &x)) * sawtooth(&y);
            acc += base * sign;
            return acc;
        }
        // balanced residue in (-α/2, α/2]
        let mut reduced = beta.rem_euclid(alpha);
        if 2 * reduced > alpha {
            reduced -= alpha;
        }
        let m = (beta - reduced) / alpha;
        x = frac(&(&x + &y * m));
        beta = reduced;
        if beta < 0 {
            sign = -sign;
            beta = -beta;
            y = frac(&-&y);
        }
        acc += reciprocity_unchecked(beta, alpha, &x, &y) * sign;
        sign = -sign;
        (beta, alpha) = (alpha, beta);
        (x, y) = (y, x);
    }
}

/// `S^±_i = Σ_{r=1}^{α} {(γ ± rβ)/α} ((r/α))`, checked against the
/// decomposition `s(±β, α; γ/α, 0) ± ½((qγ/α))` with `qβ ≡ 1 (mod α)`.
pub fn corner_sum(alpha: i64, beta: i64, gamma: i64, sign: i64) -> Result<ExactRational> {
    check_pair(beta, alpha)?;
    let sign = sign.signum();
    if sign == 0 {
        return Err(Error::InvalidSeifert("corner sum sign must be +1 or -1".into()));
    }
    // {(γ ± rβ)/α}((r/α)) = ((γ ± rβ) mod α)(2r − α) / 2α², and the r = α term vanishes
    let numer: i128 = (1..alpha)
        .map(|r| {
            let top = (gamma as i128 + (sign * r) as i128 * beta as i128).rem_euclid(alpha as i128);
            top * (2 * r as i128 - alpha as i128)
        })
        .sum();
    let direct = ExactRational::new(numer, 2 * alpha as i128 * alpha as i128)?;
    let q = mod_inverse(beta, alpha).ok_or(Error::NotCoprime(beta, alpha))?;
    let dr = dr_sum_fast(&DRInput::new(
        sign * beta,
        alpha,
        ExactRational::frac_of(gamma, alpha),
        ExactRational::zero(),
    )?);
    let corr = sawtooth(&ExactRational::frac_of(q * gamma, alpha)) / 2;
    let decomposed = dr + corr * sign;
    if decomposed != direct {
        return Err(Error::Invariant(format!(
            "corner sum ({alpha}, {beta}, {gamma}, {sign}): direct {direct} vs decomposition {decomposed}"
        )));
    }
    Ok(direct)
}

fn check_lengths(alphas: &[i64], betas: &[i64], gammas: &[i64]) -> Result<()> {
    if alphas.len() != betas.len() || alphas.len() != gammas.len() {
        return Err(Error::InvalidSeifert(format!(
            "length mismatch: {} isotropies, {} pairings, {} weights",
            alphas.len(),
            betas.len(),
            gammas.len()
        )));
    }
    for (&a, &b) in alphas.iter().zip(betas) {
        check_pair(b, a)?;
    }
    Ok(())
}

/// `S(β̄, ᾱ; γ̄) = Σ_i s(β_i, α_i; γ_i/α_i, 0)`.
pub fn s_composite(alphas: &[i64], betas: &[i64], gammas: &[i64]) -> Result<ExactRational> {
    check_lengths(alphas, betas, gammas)?;
    let mut total = ExactRational::zero();
    for ((&a, &b), &g) in alphas.iter().zip(betas).zip(gammas) {
        let x = ExactRational::frac_of(g.rem_euclid(a), a);
        total += dr_sum_fast(&DRInput::new(b, a, x, ExactRational::zero())?);
    }
    Ok(total)
}

/// `d(β̄, ᾱ; γ̄) = Σ_i ((q_i γ_i / α_i))` with `q_i β_i ≡ 1 (mod α_i)`.
pub fn d_composite(alphas: &[i64], betas: &[i64], gammas: &[i64]) -> Result<ExactRational> {
    check_lengths(alphas, betas, gammas)?;
    let mut total = ExactRational::zero();
    for ((&a, &b), &g) in alphas.iter().zip(betas).zip(gammas) {
        let q = mod_inverse(b, a).ok_or(Error::NotCoprime(b, a))?;
        total += sawtooth(&ExactRational::frac_of(q * g.rem_euclid(a), a));
    }
    Ok(total)
}

fn check_rho(rho: &ExactRational) -> Result<()> {
    if rho.is_positive() && *rho < 1 {
        Ok(())
    } else {
        Err(Error::RhoOutOfRange(rho.to_string()))
    }
}

/// `S_ρ(β̄, ᾱ; γ̄) = Σ_i s(β_i, α_i; (γ_i + β_i ρ)/α_i, −ρ)` for `0 < ρ < 1`.
pub fn s_rho(alphas: &[i64], betas: &[i64], gammas: &[i64], rho: &ExactRational) -> Result<ExactRational> {
    check_lengths(alphas, betas, gammas)?;
    check_rho(rho)?;
    let mut total = ExactRational::zero();
    for ((&a, &b), &g) in alphas.iter().zip(betas).zip(gammas) {
        let x = (rho * b + g.rem_euclid(a)) / a;
        total += dr_sum_fast(&DRInput::new(b, a, x, -rho)?);
    }
    Ok(total)
}

/// `F_ρ(α, β, γ) = {(qγ + ρ)/α}` with `qβ ≡ 1 (mod α)`, for `0 < ρ < 1`.
pub fn f_rho(alpha: i64, beta: i64, gamma: i64, rho: &ExactRational) -> Result<ExactRational> {
    check_pair(beta, alpha)?;
    check_rho(rho)?;
    let q = mod_inverse(beta, alpha).ok_or(Error::NotCoprime(beta, alpha))?;
    Ok(frac(&((rho + q * gamma.rem_euclid(alpha)) / alpha)))
}
