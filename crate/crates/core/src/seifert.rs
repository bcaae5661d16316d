//! Seifert fibrations `N(g; b; ᾱ, β̄)`, viewed as unit circle bundles of a
//! line V-bundle `L₀` of rational degree `ℓ = b + Σ β_i/α_i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::numkernel::{gcd, mod_inverse, ExactRational};
use crate::orbifold::{Orbifold, VLineBundle};

/// Normalized Seifert invariants, with `0 < β_i < α_i` and `gcd(α_i, β_i) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertData {
    base: Orbifold,
    betas: Vec<i64>,
    smooth_degree: i64,
    ell: ExactRational,
}

impl SeifertData {
    pub fn new(genus: u32, smooth_degree: i64, alphas: Vec<i64>, betas: Vec<i64>) -> Result<Self> {
        if alphas.len() != betas.len() {
            return Err(Error::InvalidSeifert(format!(
                "{} isotropies but {} Seifert pairings",
                alphas.len(),
                betas.len()
            )));
        }
        let base = Orbifold::new(genus, alphas)?;
        for (&a, &b) in base.alphas().iter().zip(&betas) {
            if !(0 < b && b < a) {
                return Err(Error::InvalidSeifert(format!("pairing {b} outside 1..{a}")));
            }
            if gcd(a, b) != 1 {
                return Err(Error::NotCoprime(b, a));
            }
        }
        let mut ell = ExactRational::from_integer(smooth_degree);
        for (&a, &b) in base.alphas().iter().zip(&betas) {
            ell += ExactRational::frac_of(b, a);
        }
        Ok(SeifertData {
            base,
            betas,
            smooth_degree,
            ell,
        })
    }

    /// `Σ(a, b, c)` as the link of `x^a + y^b + z^c = 0`, with `ℓ = −1/(abc)`.
    pub fn brieskorn(a: i64, b: i64, c: i64) -> Result<Self> {
        if a < 2 || b < 2 || c < 2 || gcd(a, b) != 1 || gcd(a, c) != 1 || gcd(b, c) != 1 {
            return Err(Error::InvalidTriple(a, b, c));
        }
        let alphas = [a, b, c];
        let mut betas = Vec::with_capacity(3);
        for i in 0..3 {
            let others: i64 = (0..3).filter(|&j| j != i).map(|j| alphas[j]).product();
            let inv = mod_inverse(others, alphas[i]).ok_or(Error::InvalidTriple(a, b, c))?;
            betas.push((-inv).rem_euclid(alphas[i]));
        }
        let ell = ExactRational::new(-1, a * b * c)?;
        let fractional: ExactRational = alphas
            .iter()
            .zip(&betas)
            .map(|(&al, &be)| ExactRational::frac_of(be, al))
            .sum();
        let smooth = (&ell - fractional)
            .to_i64()
            .ok_or_else(|| Error::Invariant(format!("non-integral smooth degree for ({a},{b},{c})")))?;
        SeifertData::new(0, smooth, alphas.to_vec(), betas)
    }

    pub fn base(&self) -> &Orbifold {
        &self.base
    }

    pub fn genus(&self) -> u32 {
        self.base.genus()
    }

    pub fn alphas(&self) -> &[i64] {
        self.base.alphas()
    }

    pub fn betas(&self) -> &[i64] {
        &self.betas
    }

    /// The smooth degree `b`.
    pub fn smooth_degree(&self) -> i64 {
        self.smooth_degree
    }

    /// The rational degree `ℓ = deg L₀`.
    pub fn ell(&self) -> &ExactRational {
        &self.ell
    }

    /// `L₀ = L(b; β̄)`, whose circle bundle is this manifold.
    pub fn l0(&self) -> VLineBundle {
        VLineBundle::new(self.base.clone(), self.smooth_degree, self.betas.clone())
            .expect("pairings validated on construction")
    }

    /// `ℓ ≠ 0`, the hypothesis of every eta formula here.
    pub fn degree_nonzero(&self) -> bool {
        !self.ell.is_zero()
    }

    /// An integral homology sphere: genus 0, pairwise coprime isotropies and
    /// `|ℓ|·Πα_i = 1`.
    pub fn is_homology_sphere(&self) -> bool {
        if self.genus() != 0 {
            return false;
        }
        let alphas = self.alphas();
        for i in 0..alphas.len() {
            for j in i + 1..alphas.len() {
                if gcd(alphas[i], alphas[j]) != 1 {
                    return false;
                }
            }
        }
        let prod: ExactRational = alphas
            .iter()
            .fold(ExactRational::one(), |acc, &a| acc * a);
        self.ell.abs() * prod == 1
    }

    /// `sign(ℓ)`, or an error for `ℓ = 0`.
    pub fn sign_ell(&self) -> Result<i64> {
        match self.ell.signum() {
            0 => Err(Error::DegreeZero),
            s => Ok(s as i64),
        }
    }
}

/// `g:b:a1/b1,a2/b2,...`
impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .alphas()
            .iter()
            .zip(&self.betas)
            .map(|(a, b)| format!("{a}/{b}"))
            .collect();
        write!(f, "{}:{}:{}", self.genus(), self.smooth_degree, pairs.join(","))
    }
}

impl FromStr for SeifertData {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.splitn(3, ':');
        let (Some(g), Some(b), Some(rest)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(ParseError::new(s, s.len(), "expected g:b:a1/b1,a2/b2,...").into());
        };
        let genus = g
            .trim()
            .parse::<u32>()
            .map_err(|_| ParseError::new(s, 0, "genus must be a non-negative integer"))?;
        let b_at = g.len() + 1;
        let smooth = b
            .trim()
            .parse::<i64>()
            .map_err(|_| ParseError::new(s, b_at, "smooth degree must be an integer"))?;
        let mut offset = b_at + b.len() + 1;
        let (mut alphas, mut betas) = (Vec::new(), Vec::new());
        if !rest.trim().is_empty() {
            for item in rest.split(',') {
                let Some((a, be)) = item.split_once('/') else {
                    return Err(ParseError::new(s, offset, "expected alpha/beta").into());
                };
                let a = a
                    .trim()
                    .parse::<i64>()
                    .map_err(|_| ParseError::new(s, offset, "isotropy must be an integer"))?;
                let be = be
                    .trim()
                    .parse::<i64>()
                    .map_err(|_| ParseError::new(s, offset, "pairing must be an integer"))?;
                alphas.push(a);
                betas.push(be);
                offset += item.len() + 1;
            }
        }
        SeifertData::new(genus, smooth, alphas, betas)
    }
}
