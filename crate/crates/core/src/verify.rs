//! Self-checking suites: each runs a family of exact comparisons and stops
//! with the smallest counterexample it finds.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dedekind::{dr_sum_direct, dr_sum_fast, reciprocity_r, DRInput};
use crate::error::{Error, Result};
use crate::eta::{eta_series, eta_zero_flat, eta_zero_pullback, EtaContext};
use crate::laurent::LaurentPolynomial;
use crate::lattice::{hnk_split_diagonalize, plumbing_form, theta_invariant, IntegerQuadraticForm};
use crate::numkernel::{gcd, BigFloat, ExactRational};
use crate::orbifold::VLineBundle;
use crate::par::Execution;
use crate::report::Family;
use crate::seifert::SeifertData;
use crate::swfloer::{froyshov_row, FroyshovRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    DedekindOracle,
    EtaConsistency,
    FroyshovTable,
    Families,
    Lattice,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::DedekindOracle,
        Suite::EtaConsistency,
        Suite::FroyshovTable,
        Suite::Families,
        Suite::Lattice,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::DedekindOracle => "dedekind-oracle",
            Suite::EtaConsistency => "eta-consistency",
            Suite::FroyshovTable => "froyshov-table",
            Suite::Families => "families",
            Suite::Lattice => "lattice",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub cases: usize,
    pub k_max: i64,
    pub digits: usize,
    pub exec: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 7,
            cases: 500,
            k_max: 50,
            digits: 30,
            exec: Execution::best(),
        }
    }
}

/// A failed comparison, with a size used to pick the smallest one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub size: i64,
    pub message: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub checks: usize,
    pub mismatch: Option<Mismatch>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteOutcome> {
    let results = match suite {
        Suite::DedekindOracle => dedekind_oracle(opts),
        Suite::EtaConsistency => eta_consistency(opts),
        Suite::FroyshovTable => froyshov_table(opts),
        Suite::Families => families(opts),
        Suite::Lattice => lattice(opts),
    }?;
    let checks = results.len();
    let mismatch = results.into_iter().filter_map(|r| r.err()).min_by_key(|m| m.size);
    Ok(SuiteOutcome {
        suite,
        checks,
        mismatch,
    })
}

type Check = std::result::Result<(), Mismatch>;

fn mismatch(size: i64, message: String) -> Check {
    Err(Mismatch { size, message })
}

/// `n/d` with `0 ≤ n < d ≤ 12`.
fn small_fraction<R: Rng>(rng: &mut R) -> ExactRational {
    let d = rng.gen_range(1..=12);
    ExactRational::frac_of(rng.gen_range(0..d), d)
}

/// A random coprime pair `(β, α)` with `1 ≤ β` and `α ≤ alpha_max`.
pub fn random_coprime_pair<R: Rng>(rng: &mut R, alpha_max: i64) -> (i64, i64) {
    loop {
        let alpha = rng.gen_range(1..=alpha_max);
        let beta = rng.gen_range(1..=alpha_max);
        if gcd(alpha, beta) == 1 {
            return (beta, alpha);
        }
    }
}

/// A random Seifert fibration of nonzero degree with a random line bundle,
/// as a pullback or a flat context.
pub fn random_context<R: Rng>(rng: &mut R) -> EtaContext {
    loop {
        let genus = rng.gen_range(0..3);
        let b = rng.gen_range(-4..4);
        let cones = rng.gen_range(0..4);
        let (mut alphas, mut betas) = (Vec::new(), Vec::new());
        for _ in 0..cones {
            let a = rng.gen_range(2..25);
            let be = rng.gen_range(1..a);
            if gcd(a, be) == 1 {
                alphas.push(a);
                betas.push(be);
            }
        }
        let Ok(n) = SeifertData::new(genus, b, alphas.clone(), betas) else {
            continue;
        };
        if !n.degree_nonzero() {
            continue;
        }
        let gammas = alphas.iter().map(|&a| rng.gen_range(0..a)).collect();
        let Ok(bundle) = VLineBundle::new(n.base().clone(), rng.gen_range(-6..6), gammas) else {
            continue;
        };
        let ctx = if rng.gen_bool(0.5) {
            EtaContext::flat(n, &bundle)
        } else {
            EtaContext::pullback(n, bundle)
        };
        if let Ok(ctx) = ctx {
            return ctx;
        }
    }
}

/// A random pairwise coprime triple `2 ≤ a < b < c` with `abc ≤ max_product`.
pub fn random_triple<R: Rng>(rng: &mut R, max_product: i64) -> (i64, i64, i64) {
    loop {
        let a = rng.gen_range(2..=12);
        let b = rng.gen_range(a + 1..=(max_product / a).isqrt().max(a + 1));
        let c_max = max_product / (a * b);
        if c_max <= b {
            continue;
        }
        let c = rng.gen_range(b + 1..=c_max);
        if gcd(a, b) == 1 && gcd(a, c) == 1 && gcd(b, c) == 1 {
            return (a, b, c);
        }
    }
}

fn dedekind_oracle(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let inputs: Vec<DRInput> = (0..opts.cases)
        .map(|_| {
            let (beta, alpha) = random_coprime_pair(&mut rng, 200);
            DRInput::new(beta, alpha, small_fraction(&mut rng), small_fraction(&mut rng))
        })
        .collect::<Result<_>>()?;
    Ok(opts.exec.map(&inputs, |inp| {
        let size = inp.alpha + inp.beta;
        let fast = dr_sum_fast(inp);
        let direct = dr_sum_direct(inp);
        if fast != direct {
            return mismatch(size, format!("{inp:?}: fast {fast} vs direct {direct}"));
        }
        let swapped = inp.swapped().map_err(|e| Mismatch { size, message: e.to_string() })?;
        let lhs = &direct + dr_sum_direct(&swapped);
        let rhs = reciprocity_r(inp).map_err(|e| Mismatch { size, message: e.to_string() })?;
        if lhs != rhs {
            return mismatch(size, format!("{inp:?}: s + s' = {lhs} but R = {rhs}"));
        }
        Ok(())
    }))
}

fn eta_consistency(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let contexts: Vec<EtaContext> = (0..opts.cases).map(|_| random_context(&mut rng)).collect();
    let series_cases = opts.cases.min(20);
    let zero = BigFloat::from_i64(0, opts.digits);
    let tol = 10f64.powi(-(opts.digits as i32) + 4);
    Ok(opts.exec.map(&contexts.iter().enumerate().collect::<Vec<_>>(), |&(i, ctx)| {
        let size = ctx.seifert().alphas().iter().sum::<i64>() + ctx.seifert().genus() as i64;
        let label = format!("{} with bundle {:?}", ctx.seifert(), ctx.bundle());
        let fail = |e: Error| Mismatch {
            size,
            message: format!("{label}: {e}"),
        };
        let exact = eta_zero_flat(ctx).map_err(fail)?;
        if ctx.rho().is_zero() {
            let dual = ctx.bundle().serre_dual();
            let dual_ctx = EtaContext::pullback(ctx.seifert().clone(), dual).map_err(fail)?;
            let (a, b) = (eta_zero_pullback(ctx).map_err(fail)?, eta_zero_pullback(&dual_ctx).map_err(fail)?);
            if a != b {
                return mismatch(size, format!("{label}: eta {a} vs Serre dual {b}"));
            }
        }
        if i < series_cases {
            let v = eta_series(ctx, &zero, opts.digits).map_err(fail)?;
            let gap = v.abs_diff_rational(&exact);
            if gap >= tol {
                return mismatch(size, format!("{label}: series {v} vs exact {exact} (gap {gap:e})"));
            }
        }
        Ok(())
    }))
}

/// The published `(a, b, c) → (F, 8m, Z)` rows.
pub const FROYSHOV_TABLE: [((i64, i64, i64), i64, i64, i64); 9] = [
    ((2, 3, 5), 8, 0, 8),
    ((2, 3, 7), -8, 8, 0),
    ((2, 3, 11), 0, 8, 8),
    ((2, 3, 13), 0, 0, 0),
    ((2, 3, 17), 8, 0, 8),
    ((3, 5, 7), 0, 8, 8),
    ((3, 5, 11), 0, 8, 8),
    ((3, 5, 13), 8, 0, 8),
    ((5, 7, 9), 0, 0, 0),
];

/// The published Poincaré polynomials.
pub const PUBLISHED_POLYNOMIALS: [((i64, i64, i64), &str); 9] = [
    ((2, 3, 5), "0"),
    ((2, 3, 7), "T^-1"),
    ((2, 3, 11), "T^-1"),
    ((2, 3, 13), "T"),
    ((2, 3, 17), "T"),
    ((3, 5, 7), "T^-1 + T"),
    ((3, 5, 11), "T^-1 + T + T^5"),
    ((3, 5, 13), "T^3 + T^5 + T^9"),
    ((5, 7, 9), "2T + T^3 + T^7 + T^9 + T^25"),
];

fn compare_row(row: &FroyshovRow, f: i64, eight_m: i64, z: i64) -> Check {
    let size = row.triple.0 * row.triple.1 * row.triple.2;
    if row.f != f || row.eight_m != eight_m || row.z != z {
        return mismatch(
            size,
            format!(
                "{:?}: got (F, 8m, Z) = ({}, {}, {}), expected ({f}, {eight_m}, {z})",
                row.triple, row.f, row.eight_m, row.z
            ),
        );
    }
    Ok(())
}

fn froyshov_table(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let rows = opts.exec.map(&FROYSHOV_TABLE, |&((a, b, c), f, m, z)| {
        let row = froyshov_row(a, b, c, Execution::Sequential).map_err(|e| Mismatch {
            size: a * b * c,
            message: e.to_string(),
        })?;
        compare_row(&row, f, m, z)?;
        let expected: LaurentPolynomial = PUBLISHED_POLYNOMIALS
            .iter()
            .find(|x| x.0 == (a, b, c))
            .map(|x| x.1.parse().expect("valid literal"))
            .expect("every row has a polynomial");
        if row.p != expected {
            return mismatch(a * b * c, format!("({a},{b},{c}): P = {} vs {expected}", row.p));
        }
        Ok(())
    });
    Ok(rows)
}

/// `(P, F)` predicted for `(2, 3, 6k+1)` and `(2, 3, 6k−1)`.
pub fn six_k_prediction(family: Family, k: i64) -> Option<(LaurentPolynomial, i64)> {
    let j = (k + 1) / 2;
    match family {
        Family::SixKPlusOne if k % 2 == 1 => Some((LaurentPolynomial::monomial(j, -1), -8)),
        Family::SixKPlusOne => Some((LaurentPolynomial::monomial(k / 2, 1), 0)),
        Family::SixKMinusOne if k % 2 == 0 => Some((LaurentPolynomial::monomial(k / 2, -1), 0)),
        Family::SixKMinusOne => Some((LaurentPolynomial::monomial((k - 1) / 2, 1), 8)),
        _ => None,
    }
}

/// `Σ_{j=1}^{k} (k + 1 − j) T^{1 + c·j(j−1)}`, with `c = 2` for `(2, 4k+1, 4k+3)`
/// and `c = 3` for `(3, 3k+1, 3k+2)`.
pub fn ladder_polynomial(family: Family, k: i64) -> Option<LaurentPolynomial> {
    let c = match family {
        Family::FourK => 2,
        Family::ThreeK => 3,
        _ => return None,
    };
    let mut p = LaurentPolynomial::zero();
    for j in 1..=k {
        p.add_term(1 + c * j * (j - 1), k + 1 - j);
    }
    Some(p)
}

fn families(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut jobs: Vec<(Family, i64)> = Vec::new();
    for fam in [Family::SixKPlusOne, Family::SixKMinusOne] {
        jobs.extend((1..=opts.k_max).map(|k| (fam, k)));
    }
    jobs.extend((1..=opts.k_max.min(6)).map(|k| (Family::FourK, k)));
    jobs.extend((1..=opts.k_max.min(4)).map(|k| (Family::ThreeK, k)));
    Ok(opts.exec.map(&jobs, |&(fam, k)| {
        let (a, b, c) = fam.triple(k);
        let size = a * b * c;
        let row = froyshov_row(a, b, c, Execution::Sequential).map_err(|e| Mismatch {
            size,
            message: e.to_string(),
        })?;
        let (p, f, z) = match fam {
            Family::SixKPlusOne | Family::SixKMinusOne => {
                let (p, f) = six_k_prediction(fam, k).expect("six-k family");
                (p, f, if fam == Family::SixKPlusOne { 0 } else { 8 })
            }
            _ => (ladder_polynomial(fam, k).expect("ladder family"), 0, 0),
        };
        if row.p != p || row.f != f || row.z != z {
            return mismatch(
                size,
                format!("{fam} at k = {k}: got P = {}, F = {}, Z = {}; expected P = {p}, F = {f}, Z = {z}", row.p, row.f, row.z),
            );
        }
        Ok(())
    }))
}

/// The Remark matrix `A` for `(2, 3, 7)` and its inverse.
pub fn remark_matrices() -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let a = vec![vec![-1, 1, 1, 1], vec![1, -2, 0, 0], vec![1, 0, -3, 0], vec![1, 0, 0, -7]];
    let b = vec![
        vec![-42, -21, -14, -6],
        vec![-21, -11, -7, -3],
        vec![-14, -7, -5, -2],
        vec![-6, -3, -2, -1],
    ];
    (a, b)
}

fn lattice(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let as_check = |size: i64, r: Result<Check>| -> Check {
        r.unwrap_or_else(|e| mismatch(size, e.to_string()))
    };
    checks.push(as_check(
        42,
        (|| {
            let q = plumbing_form(2, 3, 7)?;
            let (a, b) = remark_matrices();
            if q.matrix() != a || q.integer_inverse()? != b {
                return Ok(mismatch(42, format!("plumbing of (2,3,7) is {q:?}")));
            }
            Ok(Ok(()))
        })(),
    ));
    let ks: Vec<i64> = (1..=opts.k_max.min(8)).collect();
    checks.extend(opts.exec.map(&ks, |&k| {
        as_check(
            k,
            (|| {
                let q = plumbing_form(2, 3, 6 * k + 1)?;
                let (theta, split) = (theta_invariant(&q)?, hnk_split_diagonalize(&q)?);
                if theta != 0 || !split.is_fully_diagonal() {
                    return Ok(mismatch(k, format!("(2,3,{}): theta {theta}, split {split:?}", 6 * k + 1)));
                }
                let q = plumbing_form(2, 3, 6 * k - 1)?;
                let (theta, split) = (theta_invariant(&q)?, hnk_split_diagonalize(&q)?);
                if theta != 8 || split.residual_rank() != 8 || !split.residual_is_negative_e8()? {
                    return Ok(mismatch(k, format!("(2,3,{}): theta {theta}, split {split:?}", 6 * k - 1)));
                }
                Ok(Ok(()))
            })(),
        )
    }));
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let samples: Vec<(u64, usize, usize)> = (0..opts.cases.min(50))
        .map(|_| (rng.gen(), rng.gen_range(1..7), rng.gen_range(0..2)))
        .collect();
    checks.extend(opts.exec.map(&samples, |&(seed, diag, e8)| {
        let size = (diag + 8 * e8) as i64;
        as_check(size, property_check(seed, diag, e8))
    }));
    Ok(checks)
}

/// A scrambled `diag⟨−1⟩ ⊕ e8(−E8)`.
pub fn random_unimodular(seed: u64, diag: usize, e8: usize) -> IntegerQuadraticForm {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q = IntegerQuadraticForm::minus_identity(diag);
    for _ in 0..e8 {
        q = q.direct_sum(&IntegerQuadraticForm::negative_e8());
    }
    let steps = 2 * q.rank();
    q.scrambled(&mut rng, steps)
}

fn property_check(seed: u64, diag: usize, e8: usize) -> Result<Check> {
    let q = random_unimodular(seed, diag, e8);
    let size = q.rank() as i64;
    let theta = theta_invariant(&q)?;
    let split = hnk_split_diagonalize(&q)?;
    if theta != 8 * e8 as i64 || (theta == 0) != split.is_fully_diagonal() {
        return Ok(mismatch(size, format!("{q:?}: theta {theta}, split {split:?}")));
    }
    let sum = q.direct_sum(&IntegerQuadraticForm::negative_e8());
    let theta_sum = theta_invariant(&sum)?;
    if theta_sum != theta + 8 {
        return Ok(mismatch(size, format!("{q:?}: theta {theta} but theta(q + E8) = {theta_sum}")));
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> VerifyOptions {
        VerifyOptions {
            cases: 40,
            k_max: 6,
            ..VerifyOptions::default()
        }
    }

    #[test]
    fn all_suites_pass() {
        for suite in Suite::ALL {
            let out = run_suite(suite, &quick()).unwrap();
            assert!(out.passed(), "{suite}: {:?}", out.mismatch);
            assert!(out.checks > 0);
        }
    }

    #[test]
    fn suite_names() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn predictions() {
        assert_eq!(six_k_prediction(Family::SixKPlusOne, 1).unwrap().0.to_string(), "T^-1");
        assert_eq!(six_k_prediction(Family::SixKPlusOne, 4).unwrap().0.to_string(), "2T");
        assert_eq!(six_k_prediction(Family::SixKMinusOne, 1).unwrap().0.to_string(), "0");
        assert_eq!(six_k_prediction(Family::SixKMinusOne, 4).unwrap().0.to_string(), "2T^-1");
        assert_eq!(ladder_polynomial(Family::FourK, 3).unwrap().to_string(), "3T + 2T^5 + T^13");
        assert_eq!(ladder_polynomial(Family::ThreeK, 4).unwrap().to_string(), "4T + 3T^7 + 2T^19 + T^37");
        assert!(ladder_polynomial(Family::SixKPlusOne, 2).is_none());
    }

    #[test]
    fn ladder_recurrence() {
        // P_k = P_{k−1} + T·Σ_{j≤k} T^{2j(j−1)}
        for k in 2..=8 {
            let mut step = LaurentPolynomial::zero();
            for j in 1..=k {
                step.add_term(1 + 2 * j * (j - 1), 1);
            }
            let prev = ladder_polynomial(Family::FourK, k - 1).unwrap();
            assert_eq!(&prev + &step, ladder_polynomial(Family::FourK, k).unwrap());
        }
    }

    #[test]
    fn random_triples_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let (a, b, c) = random_triple(&mut rng, 100_000);
            assert!(a < b && b < c && a * b * c <= 100_000);
            assert!(SeifertData::brieskorn(a, b, c).is_ok());
        }
    }
}
