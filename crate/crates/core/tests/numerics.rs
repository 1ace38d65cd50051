use proptest::prelude::*;

use leafatlas::matrixlie::linalg::{haar_su, numerical_rank, random_sl, sample_rng, unitarity_residual};
use leafatlas::matrixlie::{g_act, iwasawa, MatrixRealForm, PoissonStructure};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn iwasawa_factors(seed in any::<u64>(), n in 2usize..=4) {
        let m = random_sl(n, &mut sample_rng(seed, 0));
        let (b, u1) = iwasawa(&m).unwrap();
        prop_assert!((&b * &u1 - &m).camax() < 1e-12);
        prop_assert!(unitarity_residual(&u1) < 1e-12);
        for i in 0..n {
            prop_assert!(b[(i, i)].re > 0.0);
        }
    }

    #[test]
    fn unitary_elements_act_by_multiplication(seed in any::<u64>(), n in 2usize..=4) {
        let mut rng = sample_rng(seed, 1);
        let u = haar_su(n, &mut rng);
        let k = haar_su(n, &mut rng);
        prop_assert!((g_act(&u, &k).unwrap() - &u * &k).camax() < 1e-12);
    }

    #[test]
    fn pi0_rank_is_even_and_bounded(seed in any::<u64>(), which in 0usize..4) {
        let label = ["sl(2,R)", "sl(3,R)", "su(2,1)", "su(1,1)"][which];
        let ps = PoissonStructure::new(MatrixRealForm::from_label(label).unwrap());
        let u = haar_su(ps.rf.n, &mut sample_rng(seed, 2));
        let p = ps.pi_0(&u).unwrap();
        prop_assert!((&p + p.transpose()).amax() < 1e-14);
        let r = numerical_rank(&p, 1e-8).rank;
        prop_assert!(r % 2 == 0 && r <= ps.rf.dim_x());
    }
}

#[test]
fn pi_u_vanishes_at_identity() {
    for label in ["sl(2,R)", "sl(4,R)", "su(2,2)"] {
        let ps = PoissonStructure::new(MatrixRealForm::from_label(label).unwrap());
        let e = leafatlas::matrixlie::linalg::CMat::identity(ps.rf.n, ps.rf.n);
        assert_eq!(ps.pi_u_right(&e).unwrap().amax(), 0.0);
    }
}

#[test]
fn samples_are_reproducible() {
    let a = haar_su(3, &mut sample_rng(5, 17));
    let b = haar_su(3, &mut sample_rng(5, 17));
    assert_eq!(a, b);
}
