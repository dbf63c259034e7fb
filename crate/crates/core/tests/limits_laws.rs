mod common;

use std::sync::Arc;

use fincat::catalog::{random_category, random_set_functor};
use fincat::cones::{
    check_cone, cone_presheaf, hom_preserves_limit, weighted_colimit_in_c, weighted_limit_in_c, WeightedDiagram,
};
use fincat::functor::enumerate_functors;
use fincat::limits::{weighted_colimit_set, weighted_limit_set, weighted_limit_via_end};
use fincat::setfunctor::nat_transformations_direct;
use fincat::{hom_functor, FinCategory, FunctorData, Variance};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A functor from a small shape into a random category, if one exists.
fn random_diagram(rng: &mut ChaCha8Rng, seed: u64) -> Option<FunctorData> {
    let shapes = common::small_shapes();
    let j = shapes[rng.gen_range(0..shapes.len())].clone();
    let c = Arc::new(random_category(seed));
    let all = enumerate_functors(&j, &c).ok()?;
    (!all.is_empty()).then(|| all[rng.gen_range(0..all.len())].clone())
}

fn iso_or_equal(c: &FinCategory, a: fincat::Obj, b: fincat::Obj) -> bool {
    a == b || c.are_isomorphic(a, b)
}

proptest! {
    #![proptest_config(common::config(64))]

    #[test]
    fn elements_reduction_matches_end_of_powers(seed in 0u64..1_000_000) {
        let j = Arc::new(random_category(seed));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_set_functor(&j, Variance::Covariant, 4, &mut rng);
        let w = random_set_functor(&j, Variance::Covariant, 3, &mut rng);
        let via_elements = weighted_limit_set(&d, &w).unwrap();
        let via_end = weighted_limit_via_end(&d, &w).unwrap();
        prop_assert_eq!(via_elements, via_end);
        let p = random_set_functor(&j, Variance::Contravariant, 3, &mut rng);
        prop_assert!(weighted_colimit_set(&d, &p).is_ok());
    }

    #[test]
    fn yoneda_reduction_recovers_the_value(seed in 0u64..1_000_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some(d) = random_diagram(&mut rng, seed) else { return Ok(()) };
        let (j, c) = (d.source().clone(), d.target().clone());
        for x in j.objects() {
            let wd = WeightedDiagram::new(d.clone(), hom_functor(&j, x, Variance::Covariant)).unwrap();
            let lim = weighted_limit_in_c(&wd).unwrap().expect("hom-weighted limits exist");
            prop_assert!(iso_or_equal(&c, lim.object, d.ob(x)));
            let at_id = j.hom(x, x).iter().position(|&f| f == j.id(x)).unwrap();
            let u = lim.cone.legs[x.0][at_id];
            prop_assert!(c.is_isomorphism(u));
            for y in j.objects() {
                for (k, &f) in j.hom(x, y).iter().enumerate() {
                    prop_assert_eq!(lim.cone.legs[y.0][k], c.comp(d.mor(f), u));
                }
            }
            let wd = WeightedDiagram::new(d.clone(), hom_functor(&j, x, Variance::Contravariant)).unwrap();
            let colim = weighted_colimit_in_c(&wd).unwrap().expect("hom-weighted colimits exist");
            prop_assert!(iso_or_equal(&c, colim.object, d.ob(x)));
        }
    }

    #[test]
    fn hom_functors_preserve_weighted_limits(seed in 0u64..1_000_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some(d) = random_diagram(&mut rng, seed) else { return Ok(()) };
        let (j, c) = (d.source().clone(), d.target().clone());
        let w = random_set_functor(&j, Variance::Covariant, 2, &mut rng);
        let wd = WeightedDiagram::new(d.clone(), w.clone()).unwrap();
        if let Some(lim) = weighted_limit_in_c(&wd).unwrap() {
            prop_assert!(hom_preserves_limit(&wd, &lim).unwrap());
            for a in c.objects() {
                let composed = hom_functor(&c, a, Variance::Covariant).precompose(&d).unwrap();
                let set_limit = weighted_limit_set(&composed, &w).unwrap();
                prop_assert_eq!(set_limit.carrier.len(), c.hom(a, lim.object).len());
            }
        }
    }

    #[test]
    fn cones_are_contravariant_in_the_weight(seed in 0u64..1_000_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some(d) = random_diagram(&mut rng, seed) else { return Ok(()) };
        let (j, c) = (d.source().clone(), d.target().clone());
        let w = random_set_functor(&j, Variance::Covariant, 2, &mut rng);
        let w2 = random_set_functor(&j, Variance::Covariant, 2, &mut rng);
        let wd = WeightedDiagram::new(d.clone(), w.clone()).unwrap();
        let wd2 = WeightedDiagram::new(d.clone(), w2.clone()).unwrap();
        let cones = cone_presheaf(&wd).unwrap();
        for alpha in nat_transformations_direct(&w2, &w).unwrap().iter().take(4) {
            for a in c.objects() {
                for k in &cones.cones[a.0] {
                    let r = k.reweight(alpha);
                    prop_assert!(check_cone(&wd2, &r).is_ok());
                    for h in c.morphisms().filter(|&h| c.cod(h) == a) {
                        prop_assert_eq!(k.along(&c, h, true).reweight(alpha), r.along(&c, h, true));
                    }
                }
            }
        }
    }
}
