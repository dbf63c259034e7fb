mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use fincat::catalog::{random_category, random_set_functor};
use fincat::ends::{coend_of, end_of, nat_transformations_end, pairing, Bifunctor, Profunctor};
use fincat::limits::weighted_limit_set;
use fincat::setfunctor::nat_transformations_direct;
use fincat::{hom_functor, opposite, product, FinCategory, Obj, RawCategory, Variance};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_bifunctor(c: &Arc<FinCategory>, rng: &mut ChaCha8Rng) -> Bifunctor {
    let base = Arc::new(product(&opposite(c), c).unwrap());
    let s = random_set_functor(&base, Variance::Covariant, 2, rng);
    Profunctor::from_functor(c.clone(), c.clone(), s).unwrap()
}

/// The same category with object and morphism names reversed in sort order.
fn reversed_names(c: &FinCategory) -> (FinCategory, Vec<String>, Vec<String>) {
    let (n, m) = (c.num_objects(), c.num_morphisms());
    let obj: Vec<String> = (0..n).map(|i| format!("o{:02}", n - 1 - i)).collect();
    let mor: Vec<String> = (0..m).map(|i| format!("m{:02}", m - 1 - i)).collect();
    let raw = c.to_raw();
    let on = |s: &str| obj[c.object(s).unwrap().0].clone();
    let mn = |s: &str| mor[c.morphism(s).unwrap().0].clone();
    let renamed = RawCategory {
        name: raw.name.clone(),
        objects: raw.objects.iter().map(|o| on(o)).collect(),
        morphisms: raw.morphisms.iter().map(|[f, a, b]| [mn(f), on(a), on(b)]).collect(),
        identities: raw.identities.iter().map(|[o, i]| [on(o), mn(i)]).collect(),
        composition: raw.composition.iter().map(|[g, f, h]| [mn(g), mn(f), mn(h)]).collect(),
    };
    (renamed.build().unwrap(), obj, mor)
}

proptest! {
    #![proptest_config(common::config(48))]

    #[test]
    fn end_is_the_hom_weighted_limit(seed in 0u64..1_000_000) {
        let c = Arc::new(random_category(seed));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_bifunctor(&c, &mut rng);
        let end = end_of(&b).unwrap();
        let hom = Profunctor::hom(&c);
        let lim = weighted_limit_set(b.functor(), hom.functor()).unwrap();
        prop_assert_eq!(end.carrier.len(), lim.carrier.len());
        // Each end tuple is matched by exactly one limit element, through the
        // legs at (x, x) and weight element id_x.
        let mut seen = BTreeSet::new();
        for t in &end.tuples {
            let matches: Vec<usize> = (0..lim.carrier.len())
                .filter(|&l| {
                    c.objects().all(|x| {
                        let o = b.object(x, x);
                        let w = hom.set(x, x).index_of(c.mor_name(c.id(x))).unwrap();
                        lim.legs[o.0][w].apply(l) == t[x.0]
                    })
                })
                .collect();
            prop_assert_eq!(matches.len(), 1);
            prop_assert!(seen.insert(matches[0]));
        }
    }

    #[test]
    fn natural_transformations_by_end_and_by_search_agree(seed in 0u64..1_000_000) {
        let c = Arc::new(random_category(seed));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for v in [Variance::Covariant, Variance::Contravariant] {
            let f = random_set_functor(&c, v, 3, &mut rng);
            let g = random_set_functor(&c, v, 3, &mut rng);
            let direct: BTreeSet<_> = nat_transformations_direct(&f, &g).unwrap().into_iter().map(|t| t.components).collect();
            let by_end = nat_transformations_end(&f, &g).unwrap();
            prop_assert_eq!(by_end.carrier.len(), by_end.transformations.len());
            let by_end: BTreeSet<_> = by_end.transformations.into_iter().map(|t| t.components).collect();
            prop_assert_eq!(direct, by_end);
        }
    }

    #[test]
    fn pairing_of_representables_is_composition(seed in 0u64..1_000_000) {
        let c = Arc::new(random_category(seed));
        for x in c.objects() {
            for z in c.objects() {
                let p = hom_functor(&c, z, Variance::Contravariant);
                let f = hom_functor(&c, x, Variance::Covariant);
                let classes = pairing(&p, &f).unwrap();
                prop_assert_eq!(classes.len(), c.hom(x, z).len());
                let mut images = BTreeSet::new();
                for members in &classes.members {
                    let composites: BTreeSet<_> = members
                        .iter()
                        .map(|&(a, i, j)| c.comp(c.hom(a, z)[i], c.hom(x, a)[j]))
                        .collect();
                    prop_assert_eq!(composites.len(), 1);
                    images.extend(composites);
                }
                prop_assert_eq!(images.len(), c.hom(x, z).len());
            }
        }
    }

    #[test]
    fn coend_classes_do_not_depend_on_naming_order(seed in 0u64..1_000_000) {
        let c = Arc::new(random_category(seed));
        let (r, obj, mor) = reversed_names(&c);
        let r = Arc::new(r);
        let (a, b) = (coend_of(&Profunctor::hom(&c)).unwrap(), coend_of(&Profunctor::hom(&r)).unwrap());
        prop_assert_eq!(a.carrier.len(), b.carrier.len());
        let mut image = BTreeSet::new();
        for members in &a.members {
            let classes: BTreeSet<usize> = members
                .iter()
                .map(|&(x, u)| {
                    let x2 = r.object(&obj[x.0]).unwrap();
                    let f2 = r.morphism(&mor[c.hom(x, x)[u].0]).unwrap();
                    let u2 = r.hom(x2, x2).iter().position(|&g| g == f2).unwrap();
                    b.class_of[x2.0][u2]
                })
                .collect();
            prop_assert_eq!(classes.len(), 1);
            image.extend(classes);
        }
        prop_assert_eq!(image.len(), b.carrier.len());
    }

    #[test]
    fn co_wedges_into_two_factor_uniquely(seed in 0u64..1_000_000) {
        let c = Arc::new(random_category(seed));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_bifunctor(&c, &mut rng);
        let offsets: Vec<usize> = c
            .objects()
            .scan(0, |acc, x| {
                let o = *acc;
                *acc += b.set(x, x).len();
                Some(o)
            })
            .collect();
        let n: usize = c.objects().map(|x| b.set(x, x).len()).sum();
        prop_assume!(n <= 12);
        let coend = coend_of(&b).unwrap();
        let mut co_wedges = 0usize;
        for bits in 0u32..(1 << n) {
            let omega = |x: Obj, u: usize| (bits >> (offsets[x.0] + u)) & 1;
            let dinatural = c.morphisms().all(|g| {
                let (j, k) = (c.dom(g), c.cod(g));
                (0..b.set(k, j).len()).all(|x| omega(j, b.left(g, j, x)) == omega(k, b.right(k, g, x)))
            });
            if !dinatural {
                continue;
            }
            co_wedges += 1;
            for members in &coend.members {
                let values: BTreeSet<u32> = members.iter().map(|&(x, u)| omega(x, u)).collect();
                prop_assert_eq!(values.len(), 1);
            }
        }
        prop_assert_eq!(co_wedges, 1usize << coend.carrier.len());
    }
}

#[test]
fn coend_of_hom_on_idem_has_two_classes() {
    let idem = Arc::new(fincat::catalog::idem());
    let coend = coend_of(&Profunctor::hom(&idem)).unwrap();
    assert_eq!(coend.carrier.elements(), ["[x,e]", "[x,id_x]"]);
}
