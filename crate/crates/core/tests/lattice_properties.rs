use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use seifert_core::lattice::{hnk_split_diagonalize, plumbing_form, theta_invariant, IntegerQuadraticForm};
use seifert_core::par::Execution;

fn random_form(seed: u64, diag: usize, e8: usize) -> IntegerQuadraticForm {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q = IntegerQuadraticForm::minus_identity(diag);
    for _ in 0..e8 {
        q = q.direct_sum(&IntegerQuadraticForm::negative_e8());
    }
    let steps = 2 * q.rank();
    q.scrambled(&mut rng, steps)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn theta_bounds_and_diagonal_criterion(seed in any::<u64>(), diag in 1usize..7, e8 in 0usize..2) {
        prop_assume!(diag + 8 * e8 > 0);
        let q = random_form(seed, diag, e8);
        prop_assert!(q.is_negative_definite() && q.is_unimodular());
        let theta = theta_invariant(&q).unwrap();
        prop_assert_eq!(theta % 8, 0);
        prop_assert!(0 <= theta && theta <= q.rank() as i64);
        prop_assert_eq!(theta == q.rank() as i64, q.is_even());
        prop_assert_eq!(theta, 8 * e8 as i64);
        let split = hnk_split_diagonalize(&q).unwrap();
        prop_assert_eq!(theta == 0, split.is_fully_diagonal());
        prop_assert_eq!(split.diagonal_rank, diag);
    }

    #[test]
    fn theta_adds_rank_of_even_summand(seed in any::<u64>(), diag in 1usize..6, twice in any::<bool>()) {
        let q1 = random_form(seed, diag, 0);
        let mut q2 = IntegerQuadraticForm::negative_e8();
        if twice {
            q2 = q2.direct_sum(&IntegerQuadraticForm::negative_e8());
        }
        let sum = q1.direct_sum(&q2);
        prop_assert_eq!(theta_invariant(&sum).unwrap(), theta_invariant(&q1).unwrap() + q2.rank() as i64);
    }
}

#[test]
fn even_forms_have_full_theta() {
    let e16 = IntegerQuadraticForm::negative_e8().direct_sum(&IntegerQuadraticForm::negative_e8());
    assert_eq!(theta_invariant(&e16).unwrap(), 16);
}

#[test]
fn brieskorn_plumbings() {
    for (a, b, c) in [(2, 3, 7), (2, 3, 11), (2, 5, 7), (3, 4, 5), (2, 7, 15), (3, 5, 7)] {
        let q = plumbing_form(a, b, c).unwrap();
        let seq = seifert_core::lattice::theta_invariant_with(&q, Execution::Sequential).unwrap();
        assert_eq!(seq, theta_invariant(&q).unwrap());
        let split = hnk_split_diagonalize(&q).unwrap();
        assert_eq!(seq == 0, split.is_fully_diagonal(), "({a},{b},{c})");
    }
}
