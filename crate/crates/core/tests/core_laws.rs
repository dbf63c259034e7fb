mod common;

use std::sync::Arc;

use fincat::catalog::{random_category, random_set_functor};
use fincat::extend::extend;
use fincat::setfunctor::nat_transformations_direct;
use fincat::{hom_functor, opposite, validate_category, Variance};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(common::config(64))]

    #[test]
    fn random_categories_are_valid_and_survive_the_raw_tables(seed in 0u64..1_000_000) {
        let c = random_category(seed);
        prop_assert!(validate_category(&c).is_ok());
        prop_assert_eq!(c.to_raw().build().unwrap(), c);
    }

    #[test]
    fn opposite_is_an_involution(seed in 0u64..1_000_000) {
        let c = random_category(seed);
        let op = opposite(&c);
        prop_assert!(validate_category(&op).is_ok());
        prop_assert_eq!(opposite(&op), c);
    }

    #[test]
    fn hom_functors_are_functorial(seed in 0u64..1_000_000) {
        let c = Arc::new(random_category(seed));
        for x in c.objects() {
            for v in [Variance::Covariant, Variance::Contravariant] {
                let h = hom_functor(&c, x, v);
                prop_assert!(h.validate().is_ok());
                for a in c.objects() {
                    let expected = match v {
                        Variance::Covariant => c.hom(x, a).len(),
                        Variance::Contravariant => c.hom(a, x).len(),
                    };
                    prop_assert_eq!(h.set(a).len(), expected);
                }
            }
        }
    }

    #[test]
    fn yoneda_counts_transformations_out_of_representables(seed in 0u64..1_000_000) {
        let c = Arc::new(random_category(seed));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for v in [Variance::Covariant, Variance::Contravariant] {
            let f = random_set_functor(&c, v, 3, &mut rng);
            for x in c.objects() {
                let all = nat_transformations_direct(&hom_functor(&c, x, v), &f).unwrap();
                prop_assert_eq!(all.len(), f.set(x).len());
            }
        }
    }

    #[test]
    fn extension_keeps_the_base_fully_faithful(seed in 0u64..1_000_000) {
        let c = Arc::new(random_category(seed));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for v in [Variance::Covariant, Variance::Contravariant] {
            let s = random_set_functor(&c, v, 3, &mut rng);
            let ext = extend(&c, &s).unwrap();
            let e = ext.category();
            prop_assert!(validate_category(e).is_ok());
            prop_assert!(ext.inclusion().is_fully_faithful());
            prop_assert_eq!(e.num_morphisms(), c.num_morphisms() + s.total_size() + 1);
            for a in c.objects() {
                let virtuals = match v {
                    Variance::Covariant => e.hom(ext.extra(), ext.object(a)).len(),
                    Variance::Contravariant => e.hom(ext.object(a), ext.extra()).len(),
                };
                prop_assert_eq!(virtuals, s.set(a).len());
            }
        }
    }
}
