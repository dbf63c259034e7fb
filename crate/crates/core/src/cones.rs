//! Weighted cones in a finite category, the cone presheaf, representability
//! and weighted limits found by search.

use std::collections::HashMap;
use std::rc::Rc;
use std::sync::Arc;

use crate::category::{FinCategory, Mor, Obj};
use crate::ends::{pairing, PairingResult};
use crate::error::{Error, Result};
use crate::functor::FunctorData;
use crate::limits::{weighted_limit_set, WeightedSetLimit};
use crate::search::Csp;
use crate::set::{tuple_name, FinSet};
use crate::setfunctor::{hom_functor, hom_index, yoneda_transformation, NatTransformation, SetFunctor, Variance};

/// A diagram `D: J → C` with a weight on `J`: covariant for limits,
/// contravariant for colimits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDiagram {
    pub diagram: FunctorData,
    pub weight: SetFunctor,
}

impl WeightedDiagram {
    pub fn new(diagram: FunctorData, weight: SetFunctor) -> Result<Self> {
        if **weight.base() != **diagram.source() {
            return Err(Error::BaseMismatch);
        }
        Ok(WeightedDiagram { diagram, weight })
    }

    /// Whether this describes a limit (covariant weight) or a colimit.
    pub fn is_limit(&self) -> bool {
        self.weight.variance() == Variance::Covariant
    }

    pub fn shape(&self) -> &Arc<FinCategory> {
        self.diagram.source()
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        self.diagram.target()
    }

    /// The same data in the opposite categories, exchanging limits and
    /// colimits.
    pub fn dual(&self) -> WeightedDiagram {
        WeightedDiagram {
            diagram: self.diagram.opposite(),
            weight: self.weight.dual(),
        }
    }
}

/// A weighted cone (or cocone): `legs[J][w]` is a morphism `tip → D(J)`
/// (or `D(J) → tip`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightedCone {
    pub tip: Obj,
    pub legs: Vec<Vec<Mor>>,
}

impl WeightedCone {
    /// Composes every leg with `h`: `leg ∘ h` for cones, `h ∘ leg` for
    /// cocones.
    pub fn along(&self, c: &FinCategory, h: Mor, cone: bool) -> WeightedCone {
        let tip = if cone { c.dom(h) } else { c.cod(h) };
        let legs = self
            .legs
            .iter()
            .map(|row| row.iter().map(|&l| if cone { c.comp(l, h) } else { c.comp(h, l) }).collect())
            .collect();
        WeightedCone { tip, legs }
    }

    /// The cone for a smaller weight along `α: W' ⇒ W`:
    /// `leg'(J, w') = leg(J, α_J(w'))`.
    pub fn reweight(&self, alpha: &NatTransformation) -> WeightedCone {
        WeightedCone {
            tip: self.tip,
            legs: alpha
                .components
                .iter()
                .enumerate()
                .map(|(j, a)| a.table().iter().map(|&w| self.legs[j][w]).collect())
                .collect(),
        }
    }
}

/// Checks the naturality of a weighted cone or cocone.
pub fn check_cone(wd: &WeightedDiagram, cone: &WeightedCone) -> Result<()> {
    let (j, c, d, w) = (wd.shape(), wd.category(), &wd.diagram, &wd.weight);
    let bad = |msg: String| Err(Error::ValidationFailed(msg));
    if cone.legs.len() != j.num_objects() {
        return bad("wrong number of leg families".into());
    }
    for x in j.objects() {
        if cone.legs[x.0].len() != w.set(x).len() {
            return bad(format!("wrong number of legs at `{}`", j.object_name(x)));
        }
        for &l in &cone.legs[x.0] {
            let (a, b) = if wd.is_limit() { (cone.tip, d.ob(x)) } else { (d.ob(x), cone.tip) };
            if (c.dom(l), c.cod(l)) != (a, b) {
                return bad(format!("leg `{}` has the wrong type", c.mor_name(l)));
            }
        }
    }
    for g in j.morphisms() {
        let (src, dst) = w.action_ends(g);
        for u in 0..w.set(src).len() {
            let v = w.act(g, u);
            let ok = if wd.is_limit() {
                c.comp(d.mor(g), cone.legs[src.0][u]) == cone.legs[dst.0][v]
            } else {
                c.comp(cone.legs[src.0][u], d.mor(g)) == cone.legs[dst.0][v]
            };
            if !ok {
                return bad(format!("cone fails at `{}`", j.mor_name(g)));
            }
        }
    }
    Ok(())
}

/// The weighted cones over a diagram, organized as a functor of the tip.
#[derive(Debug, Clone)]
pub struct ConeFunctor {
    /// `Cone^W(D, −)`, contravariant for limits and covariant for colimits.
    /// Elements are named by the tuple of leg names.
    pub functor: SetFunctor,
    /// `cones[A][k]` is the cone behind element `k` at `A`.
    pub cones: Vec<Vec<WeightedCone>>,
}

pub fn cone_presheaf(wd: &WeightedDiagram) -> Result<ConeFunctor> {
    if !wd.is_limit() {
        let dual = cone_presheaf(&wd.dual())?;
        let f = &dual.functor;
        let functor = SetFunctor::new(
            wd.category().clone(),
            Variance::Covariant,
            f.sets().to_vec(),
            f.actions().to_vec(),
        )?;
        return Ok(ConeFunctor {
            functor,
            cones: dual.cones,
        });
    }
    let (j, c, d, w) = (wd.shape(), wd.category(), &wd.diagram, &wd.weight);
    let mut offs = Vec::new();
    let mut slots = Vec::new();
    for x in j.objects() {
        offs.push(slots.len());
        slots.extend((0..w.set(x).len()).map(|u| (x, u)));
    }
    let mut all = Vec::new();
    for a in c.objects() {
        let homs: Vec<&[Mor]> = j.objects().map(|x| c.hom(a, d.ob(x))).collect();
        let mut csp = Csp::new(slots.iter().map(|&(x, _)| (0..homs[x.0].len()).collect()).collect());
        let plain: Vec<Table> = j.objects().map(|x| table(homs[x.0].iter().map(|f| f.0))).collect();
        for g in j.morphisms().filter(|&g| !j.is_identity(g)) {
            let (x, y) = (j.dom(g), j.cod(g));
            let moved = table(homs[x.0].iter().map(|&f| c.comp(d.mor(g), f).0));
            for u in 0..w.set(x).len() {
                csp.link(offs[x.0] + u, moved.clone(), offs[y.0] + w.act(g, u), plain[y.0].clone());
            }
        }
        let cones: Vec<WeightedCone> = csp
            .solve_all()?
            .into_iter()
            .map(|sol| WeightedCone {
                tip: a,
                legs: j
                    .objects()
                    .map(|x| (0..w.set(x).len()).map(|u| homs[x.0][sol[offs[x.0] + u]]).collect())
                    .collect(),
            })
            .collect();
        all.push(cones);
    }
    let names: Vec<Vec<String>> = all
        .iter()
        .map(|cones| {
            cones
                .iter()
                .map(|k| {
                    let legs: Vec<&str> = k.legs.iter().flatten().map(|&l| c.mor_name(l)).collect();
                    tuple_name(&legs)
                })
                .collect()
        })
        .collect();
    let lookup: Vec<HashMap<&WeightedCone, usize>> =
        all.iter().map(|cones| cones.iter().enumerate().map(|(i, k)| (k, i)).collect()).collect();
    let (functor, ranks) = SetFunctor::from_unsorted(c.clone(), Variance::Contravariant, names, |h, i| {
        let moved = all[c.cod(h).0][i].along(c, h, true);
        lookup[c.dom(h).0][&moved]
    })?;
    let cones = all
        .iter()
        .zip(&ranks)
        .map(|(cones, rank)| {
            let mut sorted = cones.clone();
            for (i, k) in cones.iter().enumerate() {
                sorted[rank[i]] = k.clone();
            }
            sorted
        })
        .collect();
    Ok(ConeFunctor { functor, cones })
}

type Table = Option<Rc<Vec<usize>>>;

fn table(values: impl Iterator<Item = usize>) -> Table {
    Some(Rc::new(values.collect()))
}

/// A representing object `R` of a set functor with the element `u ∈ S(R)`
/// whose Yoneda transformation is invertible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub object: Obj,
    pub element: usize,
    /// `C(R, −) ⇒ S` (or `C(−, R) ⇒ S`), componentwise bijective.
    pub iso: NatTransformation,
}

/// The least representing object, with the least element inducing an
/// isomorphism.
pub fn find_representation(s: &SetFunctor) -> Option<Representation> {
    let c = s.base();
    for r in c.objects() {
        let fits = c.objects().all(|a| {
            let n = match s.variance() {
                Variance::Covariant => c.hom(r, a).len(),
                Variance::Contravariant => c.hom(a, r).len(),
            };
            n == s.set(a).len()
        });
        if !fits {
            continue;
        }
        for u in 0..s.set(r).len() {
            let t = yoneda_transformation(s, r, u);
            if t.is_isomorphism() {
                return Some(Representation {
                    object: r,
                    element: u,
                    iso: t,
                });
            }
        }
    }
    None
}

/// A weighted limit or colimit found inside a finite category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitInC {
    pub object: Obj,
    /// The universal cone, the image of `id_R`.
    pub cone: WeightedCone,
}

/// Represents the cone presheaf and verifies terminality over every cone.
pub fn weighted_limit_in_c(wd: &WeightedDiagram) -> Result<Option<LimitInC>> {
    let cones = cone_presheaf(wd)?;
    let Some(rep) = find_representation(&cones.functor) else {
        return Ok(None);
    };
    let cone = cones.cones[rep.object.0][rep.element].clone();
    if !is_universal(wd, &cones, &cone) {
        return Err(Error::InternalDisagreement(
            "representing cone is not universal".into(),
        ));
    }
    Ok(Some(LimitInC {
        object: rep.object,
        cone,
    }))
}

/// The weighted colimit `W ⋆ D` in `C`.
pub fn weighted_colimit_in_c(wd: &WeightedDiagram) -> Result<Option<LimitInC>> {
    if wd.is_limit() {
        return Err(Error::VarianceMismatch);
    }
    weighted_limit_in_c(wd)
}

fn is_universal(wd: &WeightedDiagram, cones: &ConeFunctor, cone: &WeightedCone) -> bool {
    let c = wd.category();
    let limit = wd.is_limit();
    c.objects().all(|a| {
        let maps = if limit { c.hom(a, cone.tip) } else { c.hom(cone.tip, a) };
        cones.cones[a.0]
            .iter()
            .all(|other| maps.iter().filter(|&&h| cone.along(c, h, limit) == *other).count() == 1)
    })
}

/// Whether `cone` is a valid and universal weighted cone.
pub fn is_limit_cone(wd: &WeightedDiagram, cone: &WeightedCone) -> Result<bool> {
    if check_cone(wd, cone).is_err() {
        return Ok(false);
    }
    Ok(is_universal(wd, &cone_presheaf(wd)?, cone))
}

/// Checks that `C(A, −)` carries the limit to the weighted limit of sets
/// with postcomposition legs, for every object `A`.
///
/// For colimits the check runs in the opposite category.
pub fn hom_preserves_limit(wd: &WeightedDiagram, limit: &LimitInC) -> Result<bool> {
    if !wd.is_limit() {
        return hom_preserves_limit(&wd.dual(), limit);
    }
    let (j, c, d) = (wd.shape(), wd.category(), &wd.diagram);
    for a in c.objects() {
        let g = hom_functor(c, a, Variance::Covariant).precompose(d)?;
        let set_limit = weighted_limit_set(&g, &wd.weight)?;
        let rows: HashMap<Vec<usize>, usize> = (0..set_limit.carrier.len())
            .map(|k| (row_of(&set_limit, j, k), k))
            .collect();
        let mut hit = vec![false; set_limit.carrier.len()];
        for &h in c.hom(a, limit.object) {
            let moved = limit.cone.along(c, h, true);
            let row: Vec<usize> = moved.legs.iter().flatten().map(|&l| hom_index(c, l)).collect();
            match rows.get(&row) {
                Some(&k) if !hit[k] => hit[k] = true,
                _ => return Ok(false),
            }
        }
        if hit.iter().any(|&x| !x) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn row_of(l: &WeightedSetLimit, j: &FinCategory, k: usize) -> Vec<usize> {
    j.objects().flat_map(|x| l.legs[x.0].iter().map(move |leg| leg.apply(k))).collect()
}

/// The pushed-forward weight `D_!W(X) = ∫^J C(D J, X) × W(J)` with the
/// pairing computed at each `X`.
pub fn pushforward_weight(d: &FunctorData, w: &SetFunctor) -> Result<(SetFunctor, Vec<PairingResult>)> {
    if w.variance() != Variance::Covariant || **w.base() != **d.source() {
        return Err(Error::BaseMismatch);
    }
    let (j, c) = (d.source(), d.target());
    let mut pairings = Vec::new();
    for x in c.objects() {
        let p = SetFunctor::from_fn(
            j.clone(),
            Variance::Contravariant,
            j.objects()
                .map(|y| {
                    let names = c.hom(d.ob(y), x).iter().map(|&f| c.mor_name(f).to_string()).collect();
                    FinSet::from_sorted(j.object_name(y), names)
                })
                .collect(),
            |g, i| {
                let f = c.hom(d.ob(j.cod(g)), x)[i];
                hom_index(c, c.comp(f, d.mor(g)))
            },
        )?;
        pairings.push(pairing(&p, w)?);
    }
    let sets = c
        .objects()
        .map(|x| FinSet::from_sorted(c.object_name(x), pairings[x.0].carrier.elements().to_vec()))
        .collect();
    let functor = SetFunctor::from_fn(c.clone(), Variance::Covariant, sets, |h, k| {
        let (y, p, u) = pairings[c.dom(h).0].representative(k);
        let f = c.hom(d.ob(y), c.dom(h))[p];
        pairings[c.cod(h).0].class(y, hom_index(c, c.comp(h, f)), u)
    })?;
    Ok((functor, pairings))
}

/// Both sides of `lim⟨W, G D⟩ ≅ lim⟨D_!W, G⟩` and the comparison map.
#[derive(Debug, Clone)]
pub struct DecomposeReport {
    pub direct: WeightedSetLimit,
    pub pushed: WeightedSetLimit,
    pub pushed_weight: SetFunctor,
    /// Image of each element of `pushed` in `direct`.
    pub bijection: Vec<usize>,
    pub agree: bool,
}

/// Computes both sides and compares them through the map sending a cone
/// weighted by `D_!W` to its values at `(D J, [J, id, w])`.
pub fn limit_decompose_check(d: &FunctorData, g: &SetFunctor, w: &SetFunctor) -> Result<DecomposeReport> {
    if g.variance() != Variance::Covariant || **g.base() != **d.target() {
        return Err(Error::BaseMismatch);
    }
    let (j, c) = (d.source(), d.target());
    let direct = weighted_limit_set(&g.precompose(d)?, w)?;
    let (pushed_weight, pairings) = pushforward_weight(d, w)?;
    let pushed = weighted_limit_set(g, &pushed_weight)?;
    let rows: HashMap<Vec<usize>, usize> = (0..direct.carrier.len()).map(|k| (row_of(&direct, j, k), k)).collect();
    let mut bijection = Vec::with_capacity(pushed.carrier.len());
    let mut agree = direct.carrier.len() == pushed.carrier.len();
    for k in 0..pushed.carrier.len() {
        let row: Vec<usize> = j
            .objects()
            .flat_map(|y| {
                let x = d.ob(y);
                let id = hom_index(c, c.id(x));
                let (pairings, pushed) = (&pairings, &pushed);
                (0..w.set(y).len()).map(move |u| pushed.legs[x.0][pairings[x.0].class(y, id, u)].apply(k))
            })
            .collect();
        match rows.get(&row) {
            Some(&i) => bijection.push(i),
            None => {
                agree = false;
                bijection.push(usize::MAX);
            }
        }
    }
    let mut seen = bijection.clone();
    seen.sort_unstable();
    seen.dedup();
    agree &= seen.len() == bijection.len();
    Ok(DecomposeReport {
        direct,
        pushed,
        pushed_weight,
        bijection,
        agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::category::discrete;

    fn arc(c: FinCategory) -> Arc<FinCategory> {
        Arc::new(c)
    }

    fn two(c: &Arc<FinCategory>, variance: Variance) -> SetFunctor {
        SetFunctor::constant(c.clone(), variance, FinSet::new("W", ["w1", "w2"]).unwrap())
    }

    #[test]
    fn cone_presheaf_examples() {
        let pair = arc(catalog::pair());
        let one = arc(catalog::one());
        let d = FunctorData::pick_object(one.clone(), pair.clone(), Obj(0)).unwrap();
        let sizes = |w: SetFunctor| {
            let cf = cone_presheaf(&WeightedDiagram::new(d.clone(), w).unwrap()).unwrap();
            (cf.functor.set(Obj(0)).len(), cf.functor.set(Obj(1)).len())
        };
        assert_eq!(sizes(two(&one, Variance::Covariant)), (1, 0));
        assert_eq!(sizes(SetFunctor::terminal(one.clone(), Variance::Covariant)), (1, 0));
        let empty = SetFunctor::empty(one.clone(), Variance::Covariant);
        assert_eq!(sizes(empty.clone()), (1, 1));
        let cf = cone_presheaf(&WeightedDiagram::new(d, empty).unwrap()).unwrap();
        assert_eq!(cf.functor.set(Obj(0)).elements(), ["()"]);
    }

    #[test]
    fn representations() {
        let arr = arc(catalog::arr());
        let h = hom_functor(&arr, Obj(0), Variance::Covariant);
        assert_eq!(find_representation(&h).unwrap().object, Obj(0));
        let one = arc(catalog::one());
        assert_eq!(find_representation(&two(&one, Variance::Covariant)), None);
        let si = arc(catalog::split_idem());
        let inv_l = crate::cauchy::inv_l(&si, si.morphism("e").unwrap());
        assert_eq!(si.object_name(find_representation(&inv_l).unwrap().object), "s");
    }

    #[test]
    fn yoneda_reduction_on_arr() {
        let arr = arc(catalog::arr());
        let id = FunctorData::identity(arr.clone());
        let wd = WeightedDiagram::new(id, hom_functor(&arr, Obj(0), Variance::Covariant)).unwrap();
        let lim = weighted_limit_in_c(&wd).unwrap().unwrap();
        assert_eq!(lim.object, Obj(0));
        assert_eq!(lim.cone.legs[0], [arr.id(Obj(0))]);
        assert!(hom_preserves_limit(&wd, &lim).unwrap());
    }

    #[test]
    fn limit_and_colimit_of_identity() {
        let arr = arc(catalog::arr());
        let wd = WeightedDiagram::new(
            FunctorData::identity(arr.clone()),
            SetFunctor::terminal(arr.clone(), Variance::Covariant),
        )
        .unwrap();
        // A cone over the identity with tip L has a leg into every object,
        // so the limit is the initial object 0.
        assert_eq!(weighted_limit_in_c(&wd).unwrap().unwrap().object, Obj(0));
        // Dually the colimit is the terminal object 1.
        let wd = WeightedDiagram::new(
            FunctorData::identity(arr.clone()),
            SetFunctor::terminal(arr.clone(), Variance::Contravariant),
        )
        .unwrap();
        let colim = weighted_colimit_in_c(&wd).unwrap().unwrap();
        assert_eq!(colim.object, Obj(1));
        assert!(hom_preserves_limit(&wd, &colim).unwrap());
    }

    #[test]
    fn kernel_pair_in_poset() {
        let arr = arc(catalog::arr());
        let poset = arc(catalog::poset01());
        let d = FunctorData::from_names(arr.clone(), poset.clone(), &[("0", "0"), ("1", "1")], &[("a", "le")]).unwrap();
        let w = SetFunctor::from_fn(
            arr.clone(),
            Variance::Covariant,
            vec![FinSet::new("0", ["l", "r"]).unwrap(), FinSet::new("1", ["m"]).unwrap()],
            |f, x| if arr.is_identity(f) { x } else { 0 },
        )
        .unwrap();
        let wd = WeightedDiagram::new(d, w).unwrap();
        let lim = weighted_limit_in_c(&wd).unwrap().unwrap();
        assert_eq!(poset.object_name(lim.object), "0");
        assert!(is_limit_cone(&wd, &lim.cone).unwrap());
    }

    #[test]
    fn reweighting_is_compatible_with_precomposition() {
        let arr = arc(catalog::arr());
        let id = FunctorData::identity(arr.clone());
        let w = hom_functor(&arr, Obj(0), Variance::Covariant);
        let unit = SetFunctor::terminal(arr.clone(), Variance::Covariant);
        // The only transformation 1 ⇒ C(0, −) picks id_0 and a.
        let alpha = crate::setfunctor::nat_transformations_direct(&unit, &w).unwrap().remove(0);
        let wd = WeightedDiagram::new(id.clone(), w).unwrap();
        let wd1 = WeightedDiagram::new(id, unit).unwrap();
        let cones = cone_presheaf(&wd).unwrap();
        for a in arr.objects() {
            for k in &cones.cones[a.0] {
                let r = k.reweight(&alpha);
                check_cone(&wd1, &r).unwrap();
                for &h in arr.morphisms().collect::<Vec<_>>().iter().filter(|&&h| arr.cod(h) == a) {
                    assert_eq!(k.along(&arr, h, true).reweight(&alpha), r.along(&arr, h, true));
                }
            }
        }
    }

    #[test]
    fn decompose_examples() {
        let arr = arc(catalog::arr());
        let id = FunctorData::identity(arr.clone());
        let g = hom_functor(&arr, Obj(0), Variance::Covariant);
        let unit = SetFunctor::terminal(arr.clone(), Variance::Covariant);
        let r = limit_decompose_check(&id, &g, &unit).unwrap();
        assert!(r.agree);
        assert_eq!(r.direct.carrier.len(), 1);
        let w = hom_functor(&arr, Obj(1), Variance::Covariant);
        let r = limit_decompose_check(&id, &g, &w).unwrap();
        assert!(r.agree);
        assert_eq!(r.direct.carrier.len(), g.set(Obj(1)).len());
        let empty = arc(discrete("Empty", &[]).unwrap());
        let d = FunctorData::new(empty.clone(), arr.clone(), vec![], vec![]).unwrap();
        let r = limit_decompose_check(&d, &g, &SetFunctor::terminal(empty, Variance::Covariant)).unwrap();
        assert!(r.agree);
        assert_eq!(r.pushed.carrier.len(), 1);
    }
}
