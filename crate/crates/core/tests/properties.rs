mod common;

use common::{naive_cff, naive_is_weak, naive_min_distance, naive_violations};
use proptest::prelude::*;
use wsc::verify::{count_violated_subsets, verify_locally_thin};
use wsc::{
    alteration_construct, cff_alteration_construct, cff_verify, min_distance, verify_weak, CffConfig, CodeMatrix,
    ConstructionConfig,
};

fn matrix(max_l: usize, max_n: usize) -> impl Strategy<Value = CodeMatrix> {
    (1..=max_l, 1..=max_n, 0.05f64..0.95).prop_flat_map(|(l, n, p)| {
        proptest::collection::vec(proptest::bool::weighted(p), l * n).prop_map(move |bits| {
            let cols: Vec<Vec<bool>> = bits.chunks(l).map(|c| c.to_vec()).collect();
            CodeMatrix::from_columns(l, &cols).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn strength_two_is_min_distance(m in matrix(12, 9), d in 1usize..12) {
        prop_assume!(m.size() >= 2);
        let weak = verify_weak(&m, 2, d, Some(1)).unwrap().ok;
        prop_assert_eq!(weak, min_distance(&m).unwrap() >= d);
        prop_assert_eq!(min_distance(&m).unwrap(), naive_min_distance(&m));
    }

    #[test]
    fn matches_direct_count(m in matrix(6, 7), t in 2usize..5, d in 1usize..4) {
        prop_assert_eq!(count_violated_subsets(&m, t, d).unwrap(), naive_violations(&m, t, d));
        prop_assert_eq!(verify_weak(&m, t, d, None).unwrap().ok, naive_is_weak(&m, t, d));
    }

    #[test]
    fn monotone_in_t_and_d(m in matrix(8, 7), t in 2usize..5, d in 1usize..5) {
        let ok = verify_weak(&m, t, d, Some(1)).unwrap().ok;
        if ok {
            if t > 2 {
                prop_assert!(verify_weak(&m, t - 1, d, Some(1)).unwrap().ok);
            }
            if d > 1 {
                prop_assert!(verify_weak(&m, t, d - 1, Some(1)).unwrap().ok);
            }
        } else {
            prop_assert!(!verify_weak(&m, t + 1, d, Some(1)).unwrap().ok);
            prop_assert!(!verify_weak(&m, t, d + 1, Some(1)).unwrap().ok);
        }
    }

    #[test]
    fn subcodes_stay_weak(m in matrix(8, 8), t in 2usize..4, mask in any::<u8>()) {
        prop_assume!(verify_weak(&m, t, 1, Some(1)).unwrap().ok);
        let keep: Vec<usize> = (0..m.size()).filter(|j| mask >> j & 1 == 1).collect();
        prop_assume!(!keep.is_empty());
        let sub = m.select_columns(&keep).unwrap();
        prop_assert!(verify_weak(&sub, t, 1, Some(1)).unwrap().ok);
    }

    #[test]
    fn weak_codes_are_locally_thin(m in matrix(8, 7), t in 2usize..5) {
        if verify_weak(&m, t, 1, Some(1)).unwrap().ok {
            for u in 2..=t {
                prop_assert!(verify_locally_thin(&m, u).unwrap());
            }
        }
    }

    #[test]
    fn column_permutation_invariant(m in matrix(8, 7), t in 2usize..4, d in 1usize..3, rot in 0usize..7) {
        let n = m.size();
        let perm: Vec<usize> = (0..n).map(|j| (j + rot) % n).rev().collect();
        let pm = m.select_columns(&perm).unwrap();
        prop_assert_eq!(
            count_violated_subsets(&m, t, d).unwrap(),
            count_violated_subsets(&pm, t, d).unwrap()
        );
    }

    #[test]
    fn construction_is_total_and_deterministic(
        t in 2usize..5, d in 1usize..3, l in 4usize..20, n in 1usize..40, seed in any::<u64>()
    ) {
        prop_assume!(l > d);
        let cfg = ConstructionConfig::new(t, d, l, 2.0, seed).with_n(n);
        let (m, log) = alteration_construct(&cfg).unwrap();
        prop_assert!(naive_is_weak(&m, t, d));
        prop_assert_eq!(log.final_n, n - log.deletions.len());
        let (m2, log2) = alteration_construct(&cfg).unwrap();
        prop_assert_eq!(m, m2);
        prop_assert_eq!(log, log2);
    }

    #[test]
    fn cff_construction_matches_definition(
        w in 1usize..3, r in 1usize..3, l in 4usize..14, n in 1usize..12, seed in any::<u64>()
    ) {
        let cfg = CffConfig::new(w, r, 1, l, 2.0, seed).with_n(n);
        let (m, _) = cff_alteration_construct(&cfg).unwrap();
        prop_assert!(naive_cff(&m, w, r, 1));
        prop_assert!(cff_verify(&m, w, r, 1).unwrap());
    }

    #[test]
    fn cff_verify_matches_definition(m in matrix(6, 6), w in 1usize..3, r in 1usize..3, d in 1usize..3) {
        prop_assert_eq!(cff_verify(&m, w, r, d).unwrap(), naive_cff(&m, w, r, d));
    }
}
