//! Seiberg–Witten–Floer data of Brieskorn spheres `Σ(a, b, c)`.
//!
//! Irreducible monopoles come in pairs `C_±(p)` indexed by the lattice points
//! `p` of the simplex `Δ(a, b, c)`. Each pair is built on the vortex bundle
//! `L_p` and has energy `E(p) = ν(L_p)²/ℓ`. The relative grading of `C_+(p)`
//! against the reducible is
//!
//! `n_+(p) = η(D₀) − η(L_p) − E(p)`,
//!
//! where `η(D₀)` belongs to the trivial-class flat connection and `η(L_p)` to
//! the pullback connection on `L_p`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eta::{eta_zero_flat, froyshov_f, pullback_cone_table, EtaContext};
use crate::laurent::LaurentPolynomial;
use crate::numkernel::ExactRational;
use crate::orbifold::VLineBundle;
use crate::par::Execution;
use crate::seifert::SeifertData;

/// A lattice point `(x, y, z)` of `Δ(a, b, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DeltaPoint {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl DeltaPoint {
    pub fn new(x: i64, y: i64, z: i64) -> Self {
        DeltaPoint { x, y, z }
    }
}

/// `x/a + y/b + z/c < κ/2` with `κ = 1 − 1/a − 1/b − 1/c`, cleared of
/// denominators: `2(xbc + yac + zab) < abc − bc − ac − ab`.
fn in_delta(p: &DeltaPoint, a: i64, b: i64, c: i64) -> bool {
    let (a, b, c) = (a as i128, b as i128, c as i128);
    let lhs = 2 * (p.x as i128 * b * c + p.y as i128 * a * c + p.z as i128 * a * b);
    (0..a).contains(&(p.x as i128))
        && (0..b).contains(&(p.y as i128))
        && (0..c).contains(&(p.z as i128))
        && lhs < a * b * c - b * c - a * c - a * b
}

/// All points of `Δ(a, b, c)` in lexicographic order.
pub fn enumerate_delta(a: i64, b: i64, c: i64) -> Result<Vec<DeltaPoint>> {
    SeifertData::brieskorn(a, b, c)?;
    let (ai, bi, ci) = (a as i128, b as i128, c as i128);
    let budget = ai * bi * ci - bi * ci - ai * ci - ai * bi;
    let mut out = Vec::new();
    if budget <= 0 {
        return Ok(out);
    }
    for x in 0..a {
        let used_x = 2 * x as i128 * bi * ci;
        if used_x >= budget {
            break;
        }
        for y in 0..b {
            let used_y = used_x + 2 * y as i128 * ai * ci;
            if used_y >= budget {
                break;
            }
            for z in 0..c {
                if used_y + 2 * z as i128 * ai * bi >= budget {
                    break;
                }
                out.push(DeltaPoint::new(x, y, z));
            }
        }
    }
    Ok(out)
}

/// Per-triple data shared by all points of `Δ`.
#[derive(Clone, Debug)]
pub struct Brieskorn {
    triple: (i64, i64, i64),
    seifert: SeifertData,
    eta_d0: ExactRational,
    // cone_terms[i][γ] = S⁺ − S⁻ at cone point i with weight γ
    cone_terms: Vec<Vec<ExactRational>>,
}

impl Brieskorn {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let seifert = SeifertData::brieskorn(a, b, c)?;
        let eta_d0 = eta_zero_flat(&EtaContext::trivial_class(seifert.clone())?)?;
        let cone_terms = seifert
            .alphas()
            .iter()
            .zip(seifert.betas())
            .map(|(&al, &be)| pullback_cone_table(al, be))
            .collect::<Result<Vec<_>>>()?;
        Ok(Brieskorn {
            triple: (a, b, c),
            seifert,
            eta_d0,
            cone_terms,
        })
    }

    pub fn triple(&self) -> (i64, i64, i64) {
        self.triple
    }

    pub fn seifert(&self) -> &SeifertData {
        &self.seifert
    }

    /// `η(D₀)` of the trivial-class flat connection.
    pub fn eta_d0(&self) -> &ExactRational {
        &self.eta_d0
    }

    /// `κ = 1 − 1/a − 1/b − 1/c = deg K`.
    pub fn kappa(&self) -> ExactRational {
        self.seifert.base().canonical_bundle().rational_degree()
    }

    pub fn delta(&self) -> Vec<DeltaPoint> {
        let (a, b, c) = self.triple;
        enumerate_delta(a, b, c).expect("triple validated on construction")
    }

    fn check(&self, p: &DeltaPoint) -> Result<()> {
        let (a, b, c) = self.triple;
        if in_delta(p, a, b, c) {
            Ok(())
        } else {
            Err(Error::NotInDelta(p.x, p.y, p.z))
        }
    }

    /// `L_p`: smooth degree 0, weights `(x, y, z)`.
    pub fn vortex_bundle(&self, p: &DeltaPoint) -> Result<VLineBundle> {
        self.check(p)?;
        VLineBundle::new(self.seifert.base().clone(), 0, vec![p.x, p.y, p.z])
    }

    /// `E(p) = ν²/ℓ` with `ν = deg L_p − ½ deg K`.
    pub fn energy(&self, p: &DeltaPoint) -> Result<ExactRational> {
        let l = self.vortex_bundle(p)?;
        Ok(energy_of(&l, self.seifert.ell()))
    }

    /// `n_+(p)`.
    pub fn grading_plus(&self, p: &DeltaPoint) -> Result<i64> {
        let l = self.vortex_bundle(p)?;
        self.grading_of(&l, 0)
    }

    /// `n_−(p)`, computed on the Serre dual `K − L_p`, whose pullback eta and
    /// energy coincide with those of `L_p`; the antiholomorphic partner sits
    /// one step higher.
    pub fn grading_minus(&self, p: &DeltaPoint) -> Result<i64> {
        let dual = self.vortex_bundle(p)?.serre_dual();
        self.grading_of(&dual, 1)
    }

    /// Pullback `η(0)` of a bundle on the base, from the cached cone terms.
    pub fn eta_pullback(&self, l: &VLineBundle) -> ExactRational {
        let mut eta = self.seifert.ell() / 6;
        for (table, &g) in self.cone_terms.iter().zip(l.gammas()) {
            eta -= &table[g as usize];
        }
        eta
    }

    fn grading_of(&self, l: &VLineBundle, offset: i64) -> Result<i64> {
        let eta = self.eta_pullback(l);
        let value = &self.eta_d0 - eta - energy_of(l, self.seifert.ell()) + offset;
        value
            .to_i64()
            .ok_or_else(|| Error::Invariant(format!("non-integral grading {value} for {:?}", self.triple)))
    }

    /// `P_{a,b,c} = Σ_{p ∈ Δ} T^{n_+(p)}`, checking that every exponent is odd
    /// and that `n_− = n_+ + 1` pointwise.
    pub fn poincare_polynomial(&self, exec: Execution) -> Result<LaurentPolynomial> {
        let points = self.delta();
        let gradings = exec.map(&points, |p| -> Result<i64> {
            let plus = self.grading_plus(p)?;
            let minus = self.grading_minus(p)?;
            if minus != plus + 1 {
                return Err(Error::Invariant(format!(
                    "n_- = {minus} but n_+ = {plus} at {p:?} on {:?}",
                    self.triple
                )));
            }
            Ok(plus)
        });
        let poly: LaurentPolynomial = gradings.into_iter().collect::<Result<Vec<_>>>()?.into_iter().collect();
        if !poly.is_odd() {
            return Err(Error::Invariant(format!("even exponent in P{:?} = {poly}", self.triple)));
        }
        Ok(poly)
    }

    /// `P^−`, i.e. `Σ T^{n_−(p)}`.
    pub fn poincare_polynomial_minus(&self) -> Result<LaurentPolynomial> {
        self.delta()
            .iter()
            .map(|p| self.grading_minus(p))
            .collect::<Result<Vec<_>>>()
            .map(|v| v.into_iter().collect())
    }
}

fn energy_of(l: &VLineBundle, ell: &ExactRational) -> ExactRational {
    let k = l.base().canonical_bundle().rational_degree();
    let nu = l.rational_degree() - k / 2;
    &nu * &nu / ell
}

/// Convenience wrapper over [`Brieskorn::poincare_polynomial`].
pub fn poincare_polynomial(a: i64, b: i64, c: i64) -> Result<LaurentPolynomial> {
    Brieskorn::new(a, b, c)?.poincare_polynomial(Execution::best())
}

/// The least `m ≥ 0` with `a_{−(2m+1)} = 0`.
pub fn gap_m(p: &LaurentPolynomial) -> u64 {
    let mut m = 0u64;
    while p.coefficient(-(2 * m as i64 + 1)) != 0 {
        m += 1;
    }
    m
}

/// The Froyshov bound with its ingredients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FroyshovRow {
    pub triple: (i64, i64, i64),
    #[serde(rename = "F")]
    pub f: ExactRational,
    pub eight_m: i64,
    #[serde(rename = "Z")]
    pub z: ExactRational,
    #[serde(rename = "P")]
    pub p: LaurentPolynomial,
}

/// `Z = 8m(P) + F` for `Σ(a, b, c)`.
pub fn froyshov_row(a: i64, b: i64, c: i64, exec: Execution) -> Result<FroyshovRow> {
    let data = Brieskorn::new(a, b, c)?;
    let p = data.poincare_polynomial(exec)?;
    let f = froyshov_f(data.seifert())?;
    let eight_m = 8 * gap_m(&p) as i64;
    let z = &f + eight_m;
    Ok(FroyshovRow {
        triple: (a, b, c),
        f,
        eight_m,
        z,
        p,
    })
}

/// `Z_{a,b,c}`.
pub fn froyshov_z(a: i64, b: i64, c: i64) -> Result<ExactRational> {
    Ok(froyshov_row(a, b, c, Execution::best())?.z)
}
