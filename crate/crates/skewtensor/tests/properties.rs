use num::BigRational;
use proptest::prelude::*;
use skewtensor::chow::schubert::lr_product;
use skewtensor::configurations::{all_matchings, compose, enumerate_pentads, pentad_action};
use skewtensor::field::Cyclo12;
use skewtensor::verify::{bott_serre_duality, field_axioms, whitney_sums};
use skewtensor::{ExactMatrix, FieldTag, Scalar};

fn rational() -> impl Strategy<Value = BigRational> {
    (-50i64..=50, 1i64..=12).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
}

fn cyclo() -> impl Strategy<Value = Scalar> {
    prop::array::uniform4(rational()).prop_map(|c| Scalar::Cyclotomic12(Cyclo12(c)))
}

fn perm6() -> impl Strategy<Value = Vec<usize>> {
    Just((0..6).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_ring_laws(a in cyclo(), b in cyclo(), c in cyclo()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if let Some(i) = a.inv() {
            prop_assert!((&a * &i).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn prime_field_inverse(v in 1u64..10007) {
        let a = Scalar::fp(v, 10007);
        prop_assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn seeded_field_axioms(seed in any::<u64>()) {
        let r = field_axioms(seed, 5);
        prop_assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn seeded_whitney(seed in any::<u64>()) {
        let r = whitney_sums(seed, 3).unwrap();
        prop_assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn seeded_bott_serre(seed in any::<u64>()) {
        let r = bott_serre_duality(seed, 10);
        prop_assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn skew_rank_is_even(entries in prop::collection::vec(-3i64..=3, 10), p in prop::sample::select(vec![7u64, 11, 13])) {
        let tag = FieldTag::Prime(p);
        let mut k = 0;
        let mut m = vec![vec![0i64; 5]; 5];
        for i in 0..5 {
            for j in i + 1..5 {
                m[i][j] = entries[k];
                m[j][i] = -entries[k];
                k += 1;
            }
        }
        let a = ExactMatrix::from_fn(5, 5, tag, |i, j| Scalar::from_int(m[i][j], tag)).unwrap();
        prop_assert_eq!(a.rank() % 2, 0);
    }

    #[test]
    fn littlewood_richardson_commutes(a in prop::collection::vec(0usize..=3, 0..=3), b in prop::collection::vec(0usize..=3, 0..=3)) {
        let sort = |mut v: Vec<usize>| { v.sort_unstable_by(|x, y| y.cmp(x)); v.retain(|&x| x > 0); v };
        let (a, b) = (sort(a), sort(b));
        prop_assert_eq!(lr_product(&a, &b, 3, 3), lr_product(&b, &a, 3, 3));
    }

    #[test]
    fn pentad_action_is_homomorphism(g in perm6(), h in perm6()) {
        let pentads = enumerate_pentads();
        let gh = pentad_action(&pentads, &compose(&g, &h));
        prop_assert_eq!(gh, compose(&pentad_action(&pentads, &g), &pentad_action(&pentads, &h)));
    }

    #[test]
    fn matchings_permuted_among_themselves(g in perm6()) {
        let all = all_matchings();
        let mut moved: Vec<_> = all.iter().map(|m| m.apply(&g)).collect();
        moved.sort();
        prop_assert_eq!(moved, all);
    }
}
