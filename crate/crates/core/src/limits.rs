//! Limits and colimits of diagrams of finite sets, ordinary and weighted.

use std::rc::Rc;

use petgraph::unionfind::UnionFind;

use crate::cap::{check_size, Budget};
use crate::category::Obj;
use crate::elements::category_of_elements;
use crate::error::{Error, Result};
use crate::search::Csp;
use crate::set::{sort_labeled, tuple_name, FinFunction, FinSet};
use crate::setfunctor::{SetFunctor, Variance};

/// The limit of a diagram `D: J → Set`: the compatible tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetLimit {
    /// Elements are named by their tuples `(x_J, ...)`.
    pub carrier: FinSet,
    /// For each carrier element, the element index chosen at each object.
    pub tuples: Vec<Vec<usize>>,
    /// Projections `carrier → D(J)`.
    pub legs: Vec<FinFunction>,
}

/// The colimit of a diagram `D: J → Set`: a quotient of the disjoint union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetColimit {
    /// Classes are named `[J,x]` after their least member.
    pub carrier: FinSet,
    /// Members `(J, x)` of each class, in increasing order.
    pub members: Vec<Vec<(Obj, usize)>>,
    /// Injections `D(J) → carrier`.
    pub legs: Vec<FinFunction>,
}

/// A partition of `0..n` produced by union-find, with classes sorted by the
/// name of their least member.
#[derive(Debug, Clone)]
pub(crate) struct Partition {
    pub(crate) carrier: FinSet,
    pub(crate) class_of: Vec<usize>,
    pub(crate) members: Vec<Vec<usize>>,
}

/// Partitions `0..n` by the equivalence generated by `pairs`.
///
/// Indices are assumed to be in canonical order, so each class is named by
/// `name` of its smallest index.
pub(crate) fn partition(
    label: &str,
    n: usize,
    pairs: impl IntoIterator<Item = (usize, usize)>,
    name: impl Fn(usize) -> String,
) -> Result<Partition> {
    check_size(n as u128)?;
    let mut budget = Budget::new();
    let mut uf = UnionFind::<usize>::new(n);
    for (a, b) in pairs {
        budget.charge(1)?;
        uf.union(a, b);
    }
    let mut root_class = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let r = uf.find(i);
        if root_class[r] == usize::MAX {
            root_class[r] = members.len();
            members.push(Vec::new());
        }
        members[root_class[r]].push(i);
    }
    let labeled: Vec<(String, Vec<usize>)> = members.into_iter().map(|m| (name(m[0]), m)).collect();
    let (names, members) = sort_labeled(labeled)?;
    let mut class_of = vec![0; n];
    for (k, m) in members.iter().enumerate() {
        for &i in m {
            class_of[i] = k;
        }
    }
    Ok(Partition {
        carrier: FinSet::from_sorted(label, names),
        class_of,
        members,
    })
}

fn require_covariant(d: &SetFunctor) -> Result<()> {
    if d.variance() != Variance::Covariant {
        return Err(Error::VarianceMismatch);
    }
    Ok(())
}

pub fn limit_set(d: &SetFunctor) -> Result<SetLimit> {
    require_covariant(d)?;
    let j = d.base();
    let mut csp = Csp::new(j.objects().map(|x| (0..d.set(x).len()).collect()).collect());
    for g in j.morphisms().filter(|&g| !j.is_identity(g)) {
        csp.link(
            j.dom(g).0,
            Some(Rc::new(d.action(g).table().to_vec())),
            j.cod(g).0,
            None,
        );
    }
    let solutions = csp.solve_all()?;
    let labeled: Vec<(String, Vec<usize>)> = solutions
        .into_iter()
        .map(|t| {
            let names: Vec<&str> = j.objects().map(|x| d.set(x).element(t[x.0])).collect();
            (tuple_name(&names), t)
        })
        .collect();
    let (names, tuples) = sort_labeled(labeled)?;
    let legs = j
        .objects()
        .map(|x| FinFunction::new_unchecked(tuples.iter().map(|t| t[x.0]).collect(), d.set(x).len()))
        .collect();
    Ok(SetLimit {
        carrier: FinSet::from_sorted("lim", names),
        tuples,
        legs,
    })
}

pub fn colimit_set(d: &SetFunctor) -> Result<SetColimit> {
    require_covariant(d)?;
    let j = d.base();
    let offsets = offsets(d);
    let n = d.total_size();
    let owner: Vec<(Obj, usize)> = j.objects().flat_map(|x| (0..d.set(x).len()).map(move |u| (x, u))).collect();
    let pairs = j.morphisms().flat_map(|g| {
        let (a, b) = (j.dom(g), j.cod(g));
        let offsets = &offsets;
        (0..d.set(a).len()).map(move |u| (offsets[a.0] + u, offsets[b.0] + d.act(g, u)))
    });
    let p = partition("colim", n, pairs, |i| {
        let (x, u) = owner[i];
        format!("[{},{}]", j.object_name(x), d.set(x).element(u))
    })?;
    let legs = j
        .objects()
        .map(|x| {
            FinFunction::new_unchecked(
                (0..d.set(x).len()).map(|u| p.class_of[offsets[x.0] + u]).collect(),
                p.carrier.len(),
            )
        })
        .collect();
    Ok(SetColimit {
        carrier: p.carrier,
        members: p.members.iter().map(|m| m.iter().map(|&i| owner[i]).collect()).collect(),
        legs,
    })
}

pub(crate) fn offsets(s: &SetFunctor) -> Vec<usize> {
    let mut acc = 0;
    s.base()
        .objects()
        .map(|x| {
            let o = acc;
            acc += s.set(x).len();
            o
        })
        .collect()
}

/// The limit of `D: J → Set` weighted by a covariant `W: J → Set`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedSetLimit {
    /// Elements are named by their leg values over `(J, w)` in canonical
    /// order.
    pub carrier: FinSet,
    /// `legs[J][w]: carrier → D(J)`.
    pub legs: Vec<Vec<FinFunction>>,
}

/// The colimit of `D: J → Set` weighted by a presheaf `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedSetColimit {
    /// Classes are named `[J,w,x]` after their least member.
    pub carrier: FinSet,
    /// Members `(J, w, x)` of each class.
    pub members: Vec<Vec<(Obj, usize, usize)>>,
    /// `legs[J][w]: D(J) → carrier`.
    pub legs: Vec<Vec<FinFunction>>,
}

fn check_weighted(d: &SetFunctor, w: &SetFunctor, weight_variance: Variance) -> Result<()> {
    require_covariant(d)?;
    if **d.base() != **w.base() {
        return Err(Error::BaseMismatch);
    }
    if w.variance() != weight_variance {
        return Err(Error::VarianceMismatch);
    }
    Ok(())
}

/// Assembles a weighted limit from leg tables `value[(J,w)][k]`.
pub(crate) fn weighted_limit_from_legs(d: &SetFunctor, w: &SetFunctor, rows: Vec<Vec<Vec<usize>>>) -> Result<WeightedSetLimit> {
    // rows[k][J][w] is the value of element k at (J, w).
    let j = d.base();
    let labeled: Vec<(String, Vec<Vec<usize>>)> = rows
        .into_iter()
        .map(|r| {
            let mut names = Vec::new();
            for x in j.objects() {
                for &v in &r[x.0] {
                    names.push(d.set(x).element(v).to_string());
                }
            }
            (tuple_name(&names), r)
        })
        .collect();
    let (names, rows) = sort_labeled(labeled)?;
    let legs = j
        .objects()
        .map(|x| {
            (0..w.set(x).len())
                .map(|u| FinFunction::new_unchecked(rows.iter().map(|r| r[x.0][u]).collect(), d.set(x).len()))
                .collect()
        })
        .collect();
    Ok(WeightedSetLimit {
        carrier: FinSet::from_sorted("wlim", names),
        legs,
    })
}

/// `{W, D}` computed as the ordinary limit of `D ∘ Π` over `El(W)`.
pub fn weighted_limit_set(d: &SetFunctor, w: &SetFunctor) -> Result<WeightedSetLimit> {
    check_weighted(d, w, Variance::Covariant)?;
    let el = category_of_elements(w)?;
    let lim = limit_set(&d.precompose(el.projection())?)?;
    let j = d.base();
    let rows = lim
        .tuples
        .iter()
        .map(|t| {
            j.objects()
                .map(|x| (0..w.set(x).len()).map(|u| t[el.object(x, u).0]).collect())
                .collect()
        })
        .collect();
    weighted_limit_from_legs(d, w, rows)
}

/// `{W, D}` computed as the end `∫_J D(J)^{W(J)}` of powers, which is the
/// set of natural transformations `W ⇒ D`.
pub fn weighted_limit_via_end(d: &SetFunctor, w: &SetFunctor) -> Result<WeightedSetLimit> {
    check_weighted(d, w, Variance::Covariant)?;
    let nat = crate::ends::nat_transformations_end(w, d)?;
    let rows = nat
        .transformations
        .iter()
        .map(|t| t.components.iter().map(|c| c.table().to_vec()).collect())
        .collect();
    weighted_limit_from_legs(d, w, rows)
}

/// `W ⋆ D` computed as the ordinary colimit of `D ∘ Π` over `El(W)`, and
/// cross-checked against the coend `∫^J W(J) × D(J)`.
/// A member `(J, w, x)` of a weighted colimit class.
type Triple = (Obj, usize, usize);

pub fn weighted_colimit_set(d: &SetFunctor, w: &SetFunctor) -> Result<WeightedSetColimit> {
    check_weighted(d, w, Variance::Contravariant)?;
    let el = category_of_elements(w)?;
    let colim = colimit_set(&d.precompose(el.projection())?)?;
    let j = d.base();
    let labeled: Vec<(String, Vec<Triple>)> = colim
        .members
        .iter()
        .map(|m| {
            let mut triples: Vec<(Obj, usize, usize)> = m
                .iter()
                .map(|&(o, x)| {
                    let (jo, u) = el.index(o);
                    (jo, u, x)
                })
                .collect();
            triples.sort();
            let (jo, u, x) = triples[0];
            let name = format!(
                "[{},{},{}]",
                j.object_name(jo),
                w.set(jo).element(u),
                d.set(jo).element(x)
            );
            (name, triples)
        })
        .collect();
    let (names, members) = sort_labeled(labeled)?;
    let mut class: Vec<Vec<Vec<usize>>> = j
        .objects()
        .map(|x| vec![vec![0; d.set(x).len()]; w.set(x).len()])
        .collect();
    for (k, m) in members.iter().enumerate() {
        for &(jo, u, x) in m {
            class[jo.0][u][x] = k;
        }
    }
    let n = names.len();
    let legs = class
        .into_iter()
        .map(|per_w| per_w.into_iter().map(|t| FinFunction::new_unchecked(t, n)).collect())
        .collect();
    let result = WeightedSetColimit {
        carrier: FinSet::from_sorted("wcolim", names),
        members,
        legs,
    };
    let coend = crate::ends::pairing(w, d)?;
    if coend.carrier.elements() != result.carrier.elements() {
        return Err(Error::InternalDisagreement(
            "weighted colimit via El(W) differs from the coend of copowers".into(),
        ));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog;
    use crate::category::FinCategory;
    use crate::setfunctor::hom_functor;

    fn set(label: &str, xs: &[&str]) -> FinSet {
        FinSet::new(label, xs.iter().copied()).unwrap()
    }

    fn by_sets(c: &Arc<FinCategory>, sets: Vec<FinSet>, act: impl Fn(usize, usize) -> usize) -> SetFunctor {
        SetFunctor::from_fn(c.clone(), Variance::Covariant, sets, |f, x| {
            if c.is_identity(f) {
                x
            } else {
                act(f.0, x)
            }
        })
        .unwrap()
    }

    #[test]
    fn product_and_coproduct_over_pair() {
        let pair = Arc::new(catalog::pair());
        let d = by_sets(&pair, vec![set("0", &["a", "b"]), set("1", &["c"])], |_, x| x);
        assert_eq!(limit_set(&d).unwrap().carrier.len(), 2);
        assert_eq!(colimit_set(&d).unwrap().carrier.len(), 3);
    }

    #[test]
    fn one_object_diagram() {
        let one = Arc::new(catalog::one());
        let d = by_sets(&one, vec![set("*", &["x", "y"])], |_, x| x);
        assert_eq!(limit_set(&d).unwrap().carrier.elements(), ["(x)", "(y)"]);
        assert_eq!(colimit_set(&d).unwrap().carrier.elements(), ["[*,x]", "[*,y]"]);
    }

    /// ParPair with `a` acting as identity and `b` as the swap on {1,2}.
    fn id_and_swap() -> SetFunctor {
        let c = Arc::new(catalog::par_pair());
        let b = c.morphism("b").unwrap();
        let sets = vec![set("0", &["1", "2"]), set("1", &["1", "2"])];
        SetFunctor::from_fn(c.clone(), Variance::Covariant, sets, |f, x| if f == b { 1 - x } else { x }).unwrap()
    }

    #[test]
    fn equalizer_and_coequalizer_of_swap() {
        let d = id_and_swap();
        assert_eq!(limit_set(&d).unwrap().carrier.len(), 0);
        assert_eq!(colimit_set(&d).unwrap().carrier.len(), 1);
    }

    #[test]
    fn power_and_copower() {
        let one = Arc::new(catalog::one());
        let d = by_sets(&one, vec![set("*", &["a", "b"])], |_, x| x);
        let w = by_sets(&one, vec![set("*", &["w1", "w2"])], |_, x| x);
        assert_eq!(weighted_limit_set(&d, &w).unwrap().carrier.len(), 4);
        let wc = SetFunctor::constant(one.clone(), Variance::Contravariant, set("S", &["w1", "w2"]));
        assert_eq!(weighted_colimit_set(&d, &wc).unwrap().carrier.len(), 4);
    }

    #[test]
    fn unit_weight_gives_ordinary_limits() {
        let d = id_and_swap();
        let c = d.base().clone();
        let unit = SetFunctor::terminal(c.clone(), Variance::Covariant);
        let wl = weighted_limit_set(&d, &unit).unwrap();
        assert_eq!(wl.carrier.len(), limit_set(&d).unwrap().carrier.len());
        let unit = SetFunctor::terminal(c, Variance::Contravariant);
        let wc = weighted_colimit_set(&d, &unit).unwrap();
        assert_eq!(wc.carrier.len(), colimit_set(&d).unwrap().carrier.len());
    }

    #[test]
    fn kernel_pair_weight() {
        // W(0) = 2 elements, W(1) = 1; D(a) = f constant {a,b} → {c}.
        let arr = Arc::new(catalog::arr());
        let w = by_sets(&arr, vec![set("0", &["l", "r"]), set("1", &["m"])], |_, _| 0);
        let d = by_sets(&arr, vec![set("0", &["a", "b"]), set("1", &["c"])], |_, _| 0);
        assert_eq!(weighted_limit_set(&d, &w).unwrap().carrier.len(), 4);
    }

    #[test]
    fn elements_and_end_of_powers_agree() {
        let arr = Arc::new(catalog::arr());
        let w = by_sets(&arr, vec![set("0", &["l", "r"]), set("1", &["m"])], |_, _| 0);
        let d = by_sets(&arr, vec![set("0", &["a", "b"]), set("1", &["c", "d"])], |_, x| x);
        assert_eq!(weighted_limit_set(&d, &w).unwrap(), weighted_limit_via_end(&d, &w).unwrap());
    }

    #[test]
    fn weighted_sum() {
        // 2·X + Y over Pair with |X| = 2, |Y| = 1.
        let pair = Arc::new(catalog::pair());
        let d = by_sets(&pair, vec![set("0", &["x1", "x2"]), set("1", &["y"])], |_, x| x);
        let w = SetFunctor::from_fn(
            pair.clone(),
            Variance::Contravariant,
            vec![set("0", &["s", "t"]), set("1", &["u"])],
            |_, x| x,
        )
        .unwrap();
        assert_eq!(weighted_colimit_set(&d, &w).unwrap().carrier.len(), 5);
    }

    #[test]
    fn limit_of_representable_is_its_initial_value() {
        // On Arr, lim C(0,−) = C(0,0) since 0 is initial.
        let arr = Arc::new(catalog::arr());
        let h = hom_functor(&arr, arr.object("0").unwrap(), Variance::Covariant);
        assert_eq!(limit_set(&h).unwrap().carrier.len(), 1);
        assert_eq!(colimit_set(&h).unwrap().carrier.len(), 1);
    }
}
