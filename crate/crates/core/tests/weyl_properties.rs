use proptest::prelude::*;

use leafatlas::rootsys::{CartanType, RootSystem};

fn types() -> impl Strategy<Value = RootSystem> {
    prop::sample::select(vec!["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "F4", "B4"])
        .prop_map(|t| RootSystem::from_type(t.parse::<CartanType>().unwrap()).unwrap())
}

fn system_and_words() -> impl Strategy<Value = (RootSystem, Vec<usize>, Vec<usize>)> {
    types().prop_flat_map(|rs| {
        let r = rs.rank();
        let word = prop::collection::vec(0..r, 0..12);
        (Just(rs), word.clone(), word)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matrices_preserve_the_form((rs, u, _) in system_and_words()) {
        let w = rs.element_from_word(&u).unwrap();
        let m = w.matrix();
        prop_assert_eq!(&(&m.transpose() * rs.form()) * m, rs.form().clone());
    }

    #[test]
    fn roots_are_permuted((rs, u, _) in system_and_words()) {
        let w = rs.element_from_word(&u).unwrap();
        for beta in rs.positive_roots() {
            prop_assert!(rs.is_root(&w.apply(beta)));
        }
    }

    #[test]
    fn length_is_subadditive_and_inverse_invariant((rs, u, v) in system_and_words()) {
        let a = rs.element_from_word(&u).unwrap();
        let b = rs.element_from_word(&v).unwrap();
        let ab = a.compose(&b);
        prop_assert!(rs.length(&ab) <= rs.length(&a) + rs.length(&b));
        prop_assert_eq!(rs.length(&a.inverse(&rs)), rs.length(&a));
        prop_assert!(rs.length(&a) <= u.len());
    }

    #[test]
    fn normalized_words_are_reduced((rs, u, _) in system_and_words()) {
        let w = rs.element_from_word(&u).unwrap();
        let n = rs.normalize(&w);
        prop_assert_eq!(&n, &w);
        prop_assert_eq!(n.word().len(), rs.length(&w));
        prop_assert_eq!(rs.element_from_word(n.word()).unwrap(), w);
    }

    #[test]
    fn longest_element_dominates((rs, u, _) in system_and_words()) {
        let w = rs.element_from_word(&u).unwrap();
        let w0 = rs.longest();
        prop_assert!(rs.length(&w) <= rs.length(&w0));
        prop_assert_eq!(rs.length(&w) == rs.length(&w0), w == w0);
    }
}

#[test]
fn simple_reflections_are_involutions() {
    for t in ["A3", "B3", "G2", "F4", "E6"] {
        let rs = RootSystem::from_type(t.parse().unwrap()).unwrap();
        for i in 0..rs.rank() {
            let s = rs.reflect(i).unwrap();
            assert!(s.compose(&s).is_identity(), "{t} s{}", i + 1);
            assert_eq!(rs.length(&s), 1);
        }
    }
}

#[test]
fn su_n_dimension_matches_root_count() {
    for n in 2..=6 {
        let rs = RootSystem::from_type(format!("A{}", n - 1).parse().unwrap()).unwrap();
        assert_eq!(rs.dim_algebra(), n * n - 1);
    }
}

#[test]
fn enumeration_is_deterministic_and_sorted_by_length() {
    let rs = RootSystem::from_type("B3".parse().unwrap()).unwrap();
    let a = rs.enumerate_weyl(1000).unwrap();
    let b = rs.enumerate_weyl(1000).unwrap();
    assert_eq!(a, b);
    let lengths: Vec<usize> = a.iter().map(|w| rs.length(w)).collect();
    assert!(lengths.windows(2).all(|p| p[0] <= p[1]));
    assert_eq!(a.len(), 48);
}
