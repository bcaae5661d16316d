//! 2-orbifolds `Σ(g; ᾱ)` and their line V-bundles `L(c; γ̄)`.
//!
//! A bundle stores its smooth degree `deg|L|` and normalized weights
//! `0 ≤ γ_i < α_i`; the rational degree `deg|L| + Σ γ_i/α_i` is always
//! derived, so every stored pair is realizable.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numkernel::{frac, ExactRational};

/// A closed genus-`g` surface with cone points of orders `α_1, ..., α_m`.
/// Cone point locations are not modeled.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Orbifold {
    genus: u32,
    alphas: Vec<i64>,
}

impl Orbifold {
    pub fn new(genus: u32, alphas: Vec<i64>) -> Result<Self> {
        if let Some(a) = alphas.iter().find(|&&a| a < 2) {
            return Err(Error::InvalidSeifert(format!("isotropy order {a} must be at least 2")));
        }
        Ok(Orbifold { genus, alphas })
    }

    /// A smooth surface of genus `g`.
    pub fn smooth(genus: u32) -> Self {
        Orbifold { genus, alphas: Vec::new() }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn alphas(&self) -> &[i64] {
        &self.alphas
    }

    /// Number of cone points.
    pub fn cone_points(&self) -> usize {
        self.alphas.len()
    }

    /// `χ = 2 − 2g − Σ(1 − 1/α_i)`.
    pub fn euler_characteristic(&self) -> ExactRational {
        let mut chi = ExactRational::from_integer(2 - 2 * self.genus as i64);
        for &a in &self.alphas {
            chi -= ExactRational::frac_of(a - 1, a);
        }
        chi
    }

    /// `K_Σ`: smooth degree `2g − 2`, weights `α_i − 1`.
    pub fn canonical_bundle(&self) -> VLineBundle {
        VLineBundle {
            base: self.clone(),
            smooth_degree: 2 * self.genus as i64 - 2,
            gammas: self.alphas.iter().map(|a| a - 1).collect(),
        }
    }

    pub fn trivial_bundle(&self) -> VLineBundle {
        VLineBundle {
            base: self.clone(),
            smooth_degree: 0,
            gammas: vec![0; self.alphas.len()],
        }
    }
}

impl fmt::Display for Orbifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphas: Vec<String> = self.alphas.iter().map(|a| a.to_string()).collect();
        write!(f, "Σ({}; ({}))", self.genus, alphas.join(","))
    }
}

/// A line V-bundle over an orbifold.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VLineBundle {
    base: Orbifold,
    smooth_degree: i64,
    gammas: Vec<i64>,
}

impl VLineBundle {
    /// Requires `0 ≤ γ_i < α_i`.
    pub fn new(base: Orbifold, smooth_degree: i64, gammas: Vec<i64>) -> Result<Self> {
        if gammas.len() != base.alphas.len() {
            return Err(Error::InvalidSeifert(format!(
                "{} weights for {} cone points",
                gammas.len(),
                base.alphas.len()
            )));
        }
        for (&g, &a) in gammas.iter().zip(&base.alphas) {
            if !(0..a).contains(&g) {
                return Err(Error::InvalidSeifert(format!("weight {g} outside 0..{a}")));
            }
        }
        Ok(VLineBundle { base, smooth_degree, gammas })
    }

    /// Accepts arbitrary integer weights, moving each `⌊γ_i/α_i⌋` into the
    /// smooth degree so the rational degree is unchanged.
    pub fn normalized(base: Orbifold, smooth_degree: i64, gammas: Vec<i64>) -> Result<Self> {
        if gammas.len() != base.alphas.len() {
            return Err(Error::InvalidSeifert(format!(
                "{} weights for {} cone points",
                gammas.len(),
                base.alphas.len()
            )));
        }
        let mut smooth = smooth_degree;
        let mut reduced = Vec::with_capacity(gammas.len());
        for (&g, &a) in gammas.iter().zip(&base.alphas) {
            smooth += g.div_euclid(a);
            reduced.push(g.rem_euclid(a));
        }
        Ok(VLineBundle {
            base,
            smooth_degree: smooth,
            gammas: reduced,
        })
    }

    pub fn base(&self) -> &Orbifold {
        &self.base
    }

    /// `deg|L|`.
    pub fn smooth_degree(&self) -> i64 {
        self.smooth_degree
    }

    pub fn gammas(&self) -> &[i64] {
        &self.gammas
    }

    /// `deg L = deg|L| + Σ γ_i/α_i`.
    pub fn rational_degree(&self) -> ExactRational {
        let mut deg = ExactRational::from_integer(self.smooth_degree);
        for (&g, &a) in self.gammas.iter().zip(&self.base.alphas) {
            deg += ExactRational::frac_of(g, a);
        }
        deg
    }

    /// Tensor product, written additively.
    pub fn add(&self, other: &VLineBundle) -> Result<VLineBundle> {
        if self.base != other.base {
            return Err(Error::BaseMismatch);
        }
        let gammas = self.gammas.iter().zip(&other.gammas).map(|(a, b)| a + b).collect();
        VLineBundle::normalized(self.base.clone(), self.smooth_degree + other.smooth_degree, gammas)
    }

    /// `k·L`, including negative `k`.
    pub fn scale(&self, k: i64) -> VLineBundle {
        let gammas = self.gammas.iter().map(|g| g * k).collect();
        VLineBundle::normalized(self.base.clone(), self.smooth_degree * k, gammas)
            .expect("lengths already match")
    }

    pub fn negate(&self) -> VLineBundle {
        self.scale(-1)
    }

    /// `K − L`.
    pub fn serre_dual(&self) -> VLineBundle {
        self.base
            .canonical_bundle()
            .add(&self.negate())
            .expect("same base")
    }

    /// `h₀(L) − h₀(K − L) = 1 − g + deg|L|`.
    pub fn rrk_index(&self) -> i64 {
        1 - self.base.genus as i64 + self.smooth_degree
    }

    /// `θ = {c/ℓ}` where `c = deg L` and `ℓ = deg L₀`.
    pub fn holonomy_theta(&self, l0: &VLineBundle) -> Result<ExactRational> {
        if self.base != l0.base {
            return Err(Error::BaseMismatch);
        }
        holonomy_of_degree(&self.rational_degree(), &l0.rational_degree())
    }

    /// `ρ(L) = (deg K − 2 deg L) / (2ℓ)`.
    pub fn rho(&self, l0: &VLineBundle) -> Result<ExactRational> {
        if self.base != l0.base {
            return Err(Error::BaseMismatch);
        }
        let ell = l0.rational_degree();
        if ell.is_zero() {
            return Err(Error::DegreeZero);
        }
        let deg_k = self.base.canonical_bundle().rational_degree();
        Ok((deg_k - self.rational_degree() * 2) / (ell * 2))
    }

    /// The representative `L + k·L₀` of the class of `L` in `Pic/⟨L₀⟩` whose
    /// `ρ` lies in `[0, 1)`, together with `k` and that `ρ`.
    pub fn canonical_representative(&self, l0: &VLineBundle) -> Result<(VLineBundle, i64, ExactRational)> {
        let rho = self.rho(l0)?;
        let k = i64::try_from(rho.floor())
            .map_err(|_| Error::InvalidSeifert("holonomy shift out of range".into()))?;
        let rep = self.add(&l0.scale(k))?;
        let rho = rho - k;
        Ok((rep, k, rho))
    }
}

/// `θ = {c/ℓ}` for a bundle of degree `c` over a fibration of degree `ℓ`.
pub fn holonomy_of_degree(c: &ExactRational, ell: &ExactRational) -> Result<ExactRational> {
    Ok(frac(&c.checked_div(ell).map_err(|_| Error::DegreeZero)?))
}

#[derive(Serialize, Deserialize)]
struct BundleBody {
    smooth_degree: i64,
    gammas: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct BundleRecord {
    genus: u32,
    alphas: Vec<i64>,
    bundle: BundleBody,
}

impl Serialize for VLineBundle {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        BundleRecord {
            genus: self.base.genus,
            alphas: self.base.alphas.clone(),
            bundle: BundleBody {
                smooth_degree: self.smooth_degree,
                gammas: self.gammas.clone(),
            },
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VLineBundle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rec = BundleRecord::deserialize(deserializer)?;
        let base = Orbifold::new(rec.genus, rec.alphas).map_err(serde::de::Error::custom)?;
        VLineBundle::new(base, rec.bundle.smooth_degree, rec.bundle.gammas).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;
    use proptest::prelude::*;

    fn sphere(alphas: &[i64]) -> Orbifold {
        Orbifold::new(0, alphas.to_vec()).unwrap()
    }

    fn l0_235() -> VLineBundle {
        VLineBundle::new(sphere(&[2, 3, 5]), -2, vec![1, 2, 4]).unwrap()
    }

    #[test]
    fn degrees() {
        let s = sphere(&[2, 3, 5]);
        assert_eq!(s.trivial_bundle().rational_degree(), q!(0));
        let k = s.canonical_bundle();
        assert_eq!(k.smooth_degree(), -2);
        assert_eq!(k.gammas(), &[1, 2, 4]);
        assert_eq!(k.rational_degree(), q!(-1, 30));
        assert_eq!(sphere(&[2, 3, 7]).canonical_bundle().rational_degree(), q!(1, 42));
        assert_eq!(Orbifold::smooth(1).canonical_bundle().rational_degree(), q!(0));
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(Orbifold::smooth(0).euler_characteristic(), q!(2));
        assert_eq!(sphere(&[2, 3, 5]).euler_characteristic(), q!(1, 30));
        assert_eq!(Orbifold::new(1, vec![2]).unwrap().euler_characteristic(), q!(-1, 2));
    }

    #[test]
    fn invalid_inputs() {
        assert!(Orbifold::new(0, vec![2, 1]).is_err());
        assert!(VLineBundle::new(sphere(&[2, 3]), 0, vec![2, 0]).is_err());
        assert!(VLineBundle::new(sphere(&[2, 3]), 0, vec![0]).is_err());
        let a = sphere(&[2, 3]).trivial_bundle();
        let b = sphere(&[2, 5]).trivial_bundle();
        assert!(matches!(a.add(&b), Err(Error::BaseMismatch)));
    }

    #[test]
    fn addition_with_carry() {
        let s = sphere(&[2, 3, 7]);
        let l1 = VLineBundle::new(s.clone(), -2, vec![1, 2, 6]).unwrap();
        let l2 = VLineBundle::new(s.clone(), 0, vec![1, 1, 1]).unwrap();
        let sum = l1.add(&l2).unwrap();
        assert_eq!(sum.gammas(), &[0, 0, 0]);
        assert_eq!(sum.smooth_degree(), 1);
        assert_eq!(l1.add(&s.trivial_bundle()).unwrap(), l1);
        assert_eq!(l1.scale(2 * 3 * 7).gammas(), &[0, 0, 0]);
    }

    #[test]
    fn rrk() {
        assert_eq!(Orbifold::smooth(3).trivial_bundle().rrk_index(), -2);
        assert_eq!(sphere(&[2, 3, 5]).canonical_bundle().rrk_index(), -1);
        let l = VLineBundle::new(sphere(&[3, 5, 7]), 0, vec![0, 0, 1]).unwrap();
        assert_eq!(l.rrk_index(), 1);
    }

    #[test]
    fn holonomy() {
        let l0 = l0_235();
        let s = l0.base().clone();
        assert_eq!(s.trivial_bundle().holonomy_theta(&l0).unwrap(), q!(0));
        assert_eq!(l0.holonomy_theta(&l0).unwrap(), q!(0));
        assert_eq!(s.canonical_bundle().holonomy_theta(&l0).unwrap(), q!(0));
        assert_eq!(holonomy_of_degree(&q!(1, 60), &q!(-1, 30)).unwrap(), q!(1, 2));
        assert!(matches!(holonomy_of_degree(&q!(1, 60), &q!(0)), Err(Error::DegreeZero)));
        let flat = Orbifold::smooth(0);
        let zero = flat.trivial_bundle();
        assert!(matches!(zero.holonomy_theta(&zero), Err(Error::DegreeZero)));
    }

    #[test]
    fn canonical_representatives() {
        let l0 = l0_235();
        let (rep, k, rho) = l0.base().trivial_bundle().canonical_representative(&l0).unwrap();
        assert_eq!(rep, l0.base().trivial_bundle());
        assert_eq!(k, 0);
        assert_eq!(rho, q!(1, 2));

        let s = sphere(&[2, 3, 7]);
        let l0 = VLineBundle::new(s.clone(), -1, vec![1, 1, 1]).unwrap();
        let (rep, k, rho) = s.trivial_bundle().canonical_representative(&l0).unwrap();
        assert_eq!(k, -1);
        assert_eq!(rep.rational_degree(), q!(1, 42));
        assert_eq!(rep.gammas(), &[1, 2, 6]);
        assert_eq!(rep, s.canonical_bundle());
        assert_eq!(rho, q!(1, 2));

        let degenerate = VLineBundle::new(sphere(&[2, 2]), -1, vec![1, 1]).unwrap();
        assert!(matches!(s.trivial_bundle().rho(&degenerate), Err(Error::BaseMismatch)));
        let t = sphere(&[2, 2]).trivial_bundle();
        assert!(matches!(t.canonical_representative(&degenerate), Err(Error::DegreeZero)));
    }

    #[test]
    fn json_shape() {
        let k = sphere(&[2, 3, 5]).canonical_bundle();
        let v = serde_json::to_value(&k).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"genus": 0, "alphas": [2, 3, 5], "bundle": {"smooth_degree": -2, "gammas": [1, 2, 4]}})
        );
        let back: VLineBundle = serde_json::from_value(v).unwrap();
        assert_eq!(back, k);
        let bad = serde_json::json!({"genus": 0, "alphas": [2], "bundle": {"smooth_degree": 0, "gammas": [5]}});
        assert!(serde_json::from_value::<VLineBundle>(bad).is_err());
    }

    fn bundle_on(alphas: Vec<i64>) -> impl Strategy<Value = VLineBundle> {
        let n = alphas.len();
        (-20i64..20, proptest::collection::vec(-50i64..50, n)).prop_map(move |(d, g)| {
            VLineBundle::normalized(Orbifold::new(0, alphas.clone()).unwrap(), d, g).unwrap()
        })
    }

    fn orbifold_strategy() -> impl Strategy<Value = Orbifold> {
        (0u32..4, proptest::collection::vec(2i64..40, 0..6)).prop_map(|(g, a)| Orbifold::new(g, a).unwrap())
    }

    proptest! {
        #[test]
        fn degree_is_additive((a, b) in proptest::collection::vec(2i64..30, 0..5)
            .prop_flat_map(|al| (bundle_on(al.clone()), bundle_on(al)))) {
            let sum = a.add(&b).unwrap();
            prop_assert_eq!(sum.rational_degree(), a.rational_degree() + b.rational_degree());
            for (&g, &al) in sum.gammas().iter().zip(sum.base().alphas()) {
                prop_assert!((0..al).contains(&g));
            }
            let realizable = sum.rational_degree() - sum.gammas().iter().zip(sum.base().alphas())
                .map(|(&g, &al)| q!(g, al)).sum::<ExactRational>();
            prop_assert!(realizable.is_integer());
        }

        #[test]
        fn canonical_degree_is_minus_euler(s in orbifold_strategy()) {
            prop_assert_eq!(s.canonical_bundle().rational_degree(), -s.euler_characteristic());
        }

        #[test]
        fn canonical_representative_is_unique(l in bundle_on(vec![2, 3, 7]), b in -3i64..1) {
            let l0 = VLineBundle::new(l.base().clone(), b, vec![1, 1, 1]).unwrap();
            prop_assume!(!l0.rational_degree().is_zero());
            let (rep, _, rho) = l.canonical_representative(&l0).unwrap();
            prop_assert!(rho >= 0 && rho < 1);
            let (again, k2, rho2) = rep.canonical_representative(&l0).unwrap();
            prop_assert_eq!(k2, 0);
            prop_assert_eq!(&again, &rep);
            prop_assert_eq!(rho2, rho.clone());
            for dk in [-1i64, 1] {
                let other = rep.add(&l0.scale(dk)).unwrap().rho(&l0).unwrap();
                prop_assert!(!(other >= 0 && other < 1));
            }
        }
    }
}
