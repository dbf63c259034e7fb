//! Functors between finite categories and transformations between them.

use std::rc::Rc;
use std::sync::Arc;

use crate::cap::Budget;
use crate::category::{CategoryBuilder, FinCategory, Mor, Obj};
use crate::error::{Error, Result};
use crate::search::Csp;

/// A functor `source → target`, checked exhaustively on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorData {
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    obj_map: Vec<Obj>,
    mor_map: Vec<Mor>,
}

impl FunctorData {
    pub fn new(source: Arc<FinCategory>, target: Arc<FinCategory>, obj_map: Vec<Obj>, mor_map: Vec<Mor>) -> Result<Self> {
        let f = FunctorData {
            source,
            target,
            obj_map,
            mor_map,
        };
        f.check()?;
        Ok(f)
    }

    /// Builds a functor from name pairs `(source name, target name)`.
    pub fn from_names(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        objects: &[(&str, &str)],
        morphisms: &[(&str, &str)],
    ) -> Result<Self> {
        let mut obj_map = vec![None; source.num_objects()];
        for (a, b) in objects {
            obj_map[source.object(a)?.0] = Some(target.object(b)?);
        }
        let mut mor_map = vec![None; source.num_morphisms()];
        for (a, b) in morphisms {
            mor_map[source.morphism(a)?.0] = Some(target.morphism(b)?);
        }
        // Identities may be left implicit.
        for x in source.objects() {
            if mor_map[source.id(x).0].is_none() {
                if let Some(y) = obj_map[x.0] {
                    mor_map[source.id(x).0] = Some(target.id(y));
                }
            }
        }
        let obj_map = obj_map
            .into_iter()
            .enumerate()
            .map(|(i, y)| y.ok_or_else(|| Error::UnresolvedReference(source.object_name(Obj(i)).to_string())))
            .collect::<Result<Vec<_>>>()?;
        let mor_map = mor_map
            .into_iter()
            .enumerate()
            .map(|(i, g)| g.ok_or_else(|| Error::UnresolvedReference(source.mor_name(Mor(i)).to_string())))
            .collect::<Result<Vec<_>>>()?;
        FunctorData::new(source, target, obj_map, mor_map)
    }

    pub fn identity(c: Arc<FinCategory>) -> Self {
        FunctorData {
            obj_map: c.objects().collect(),
            mor_map: c.morphisms().collect(),
            source: c.clone(),
            target: c,
        }
    }

    /// The functor from `One` picking out object `x`.
    pub fn pick_object(one: Arc<FinCategory>, target: Arc<FinCategory>, x: Obj) -> Result<Self> {
        let obj_map = vec![x; one.num_objects()];
        let mor_map = vec![target.id(x); one.num_morphisms()];
        FunctorData::new(one, target, obj_map, mor_map)
    }

    fn check(&self) -> Result<()> {
        let (s, t) = (&*self.source, &*self.target);
        let bad = |msg: String| Err(Error::InvalidFunctor(msg));
        if self.obj_map.len() != s.num_objects() || self.mor_map.len() != s.num_morphisms() {
            return bad("maps do not cover the source".into());
        }
        if self.obj_map.iter().any(|y| y.0 >= t.num_objects()) || self.mor_map.iter().any(|g| g.0 >= t.num_morphisms()) {
            return bad("image outside the target".into());
        }
        for f in s.morphisms() {
            let g = self.mor(f);
            if t.dom(g) != self.ob(s.dom(f)) || t.cod(g) != self.ob(s.cod(f)) {
                return bad(format!("`{}` is sent to a morphism of the wrong type", s.mor_name(f)));
            }
        }
        for x in s.objects() {
            if self.mor(s.id(x)) != t.id(self.ob(x)) {
                return bad(format!("identity of `{}` is not preserved", s.object_name(x)));
            }
        }
        for f in s.morphisms() {
            for &g in s.outgoing(s.cod(f)) {
                if self.mor(s.comp(g, f)) != t.comp(self.mor(g), self.mor(f)) {
                    return bad(format!(
                        "composite `{} ∘ {}` is not preserved",
                        s.mor_name(g),
                        s.mor_name(f)
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    pub fn ob(&self, x: Obj) -> Obj {
        self.obj_map[x.0]
    }

    pub fn mor(&self, f: Mor) -> Mor {
        self.mor_map[f.0]
    }

    pub fn object_map(&self) -> &[Obj] {
        &self.obj_map
    }

    pub fn morphism_map(&self) -> &[Mor] {
        &self.mor_map
    }

    /// `F^op: J^op → C^op`, with the same object and morphism maps.
    pub fn opposite(&self) -> FunctorData {
        FunctorData {
            source: Arc::new(crate::category::opposite(&self.source)),
            target: Arc::new(crate::category::opposite(&self.target)),
            obj_map: self.obj_map.clone(),
            mor_map: self.mor_map.clone(),
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FunctorData) -> Result<FunctorData> {
        if *self.target != *next.source {
            return Err(Error::BaseMismatch);
        }
        Ok(FunctorData {
            source: self.source.clone(),
            target: next.target.clone(),
            obj_map: self.obj_map.iter().map(|&x| next.ob(x)).collect(),
            mor_map: self.mor_map.iter().map(|&f| next.mor(f)).collect(),
        })
    }

    pub fn is_faithful(&self) -> bool {
        let s = &*self.source;
        s.objects().all(|a| {
            s.objects().all(|b| {
                let hom = s.hom(a, b);
                let mut images: Vec<Mor> = hom.iter().map(|&f| self.mor(f)).collect();
                images.sort();
                images.dedup();
                images.len() == hom.len()
            })
        })
    }

    pub fn is_full(&self) -> bool {
        let (s, t) = (&*self.source, &*self.target);
        s.objects().all(|a| {
            s.objects().all(|b| {
                t.hom(self.ob(a), self.ob(b))
                    .iter()
                    .all(|g| s.hom(a, b).iter().any(|&f| self.mor(f) == *g))
            })
        })
    }

    pub fn is_fully_faithful(&self) -> bool {
        self.is_full() && self.is_faithful()
    }

    pub fn is_essentially_surjective(&self) -> bool {
        let t = &*self.target;
        t.objects()
            .all(|y| self.obj_map.iter().any(|&x| t.are_isomorphic(x, y)))
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_fully_faithful() && self.is_essentially_surjective()
    }
}

/// A natural transformation between functors into a finite category:
/// one target morphism per source object.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FunctorNat {
    pub components: Vec<Mor>,
}

impl FunctorNat {
    /// Checks typing and naturality of `self: f ⇒ g`.
    pub fn check(&self, f: &FunctorData, g: &FunctorData) -> Result<()> {
        let (s, t) = (&**f.source(), &**f.target());
        if *s != **g.source() || *t != **g.target() {
            return Err(Error::BaseMismatch);
        }
        if self.components.len() != s.num_objects() {
            return Err(Error::NotNatural("wrong number of components".into()));
        }
        for x in s.objects() {
            let c = self.components[x.0];
            if t.dom(c) != f.ob(x) || t.cod(c) != g.ob(x) {
                return Err(Error::NotNatural(format!("component at `{}` has the wrong type", s.object_name(x))));
            }
        }
        for h in s.morphisms() {
            let (a, b) = (s.dom(h), s.cod(h));
            if t.comp(g.mor(h), self.components[a.0]) != t.comp(self.components[b.0], f.mor(h)) {
                return Err(Error::NotNatural(format!("square at `{}` fails", s.mor_name(h))));
            }
        }
        Ok(())
    }

    pub fn is_isomorphism(&self, target: &FinCategory) -> bool {
        self.components.iter().all(|&c| target.is_isomorphism(c))
    }
}

/// All natural transformations `f ⇒ g`, in lexicographic order of their
/// component indices within each hom-set.
pub fn enumerate_transformations(f: &FunctorData, g: &FunctorData) -> Result<Vec<FunctorNat>> {
    let (s, t) = (&**f.source(), &**f.target());
    if *s != **g.source() || *t != **g.target() {
        return Err(Error::BaseMismatch);
    }
    let homs: Vec<&[Mor]> = s.objects().map(|x| t.hom(f.ob(x), g.ob(x))).collect();
    let mut csp = Csp::new(homs.iter().map(|h| (0..h.len()).collect()).collect());
    for h in s.morphisms().filter(|&h| !s.is_identity(h)) {
        let (a, b) = (s.dom(h), s.cod(h));
        let after: Vec<usize> = homs[a.0].iter().map(|&c| t.comp(g.mor(h), c).0).collect();
        let before: Vec<usize> = homs[b.0].iter().map(|&c| t.comp(c, f.mor(h)).0).collect();
        csp.link(a.0, Some(Rc::new(after)), b.0, Some(Rc::new(before)));
    }
    Ok(csp
        .solve_all()?
        .into_iter()
        .map(|sol| FunctorNat {
            components: sol.iter().enumerate().map(|(x, &i)| homs[x][i]).collect(),
        })
        .collect())
}

/// Options restricting a functor search.
#[derive(Debug, Clone, Copy, Default)]
struct FunctorSearch {
    /// Object map injective.
    injective_objects: bool,
    /// Each hom-set mapped bijectively (fully faithful).
    hom_bijective: bool,
    first_only: bool,
}

fn search_functors(source: &Arc<FinCategory>, target: &Arc<FinCategory>, opts: FunctorSearch) -> Result<Vec<FunctorData>> {
    let s = &**source;
    let mut out = Vec::new();
    let mut budget = Budget::new();
    let mut obj_map = vec![Obj(0); s.num_objects()];
    let non_ids: Vec<Mor> = s.morphisms().filter(|&f| !s.is_identity(f)).collect();
    // factors[h] lists the pairs (g, f) with g ∘ f = h.
    let mut factors = vec![Vec::new(); s.num_morphisms()];
    for f in s.morphisms() {
        for &g in s.outgoing(s.cod(f)) {
            factors[s.comp(g, f).0].push((g, f));
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn assign_morphisms(
        s: &FinCategory,
        t: &FinCategory,
        non_ids: &[Mor],
        factors: &[Vec<(Mor, Mor)>],
        k: usize,
        obj_map: &[Obj],
        mor_map: &mut Vec<Option<Mor>>,
        opts: FunctorSearch,
        budget: &mut Budget,
        found: &mut dyn FnMut(Vec<Mor>) -> bool,
    ) -> Result<bool> {
        if k == non_ids.len() {
            return Ok(found(mor_map.iter().map(|m| m.unwrap()).collect()));
        }
        let f = non_ids[k];
        let (a, b) = (s.dom(f), s.cod(f));
        for &g in t.hom(obj_map[a.0], obj_map[b.0]) {
            budget.charge(1)?;
            if opts.hom_bijective && s.hom(a, b).iter().any(|&f2| mor_map[f2.0] == Some(g)) {
                continue;
            }
            mor_map[f.0] = Some(g);
            let consistent = s.outgoing(b).iter().all(|&h| match (mor_map[h.0], mor_map[s.comp(h, f).0]) {
                (Some(hh), Some(hf)) => t.comp(hh, g) == hf,
                _ => true,
            }) && s.morphisms().filter(|&p| s.cod(p) == a).all(|p| match (mor_map[p.0], mor_map[s.comp(f, p).0]) {
                (Some(pp), Some(fp)) => t.comp(g, pp) == fp,
                _ => true,
            }) && factors[f.0].iter().all(|&(h, p)| match (mor_map[h.0], mor_map[p.0]) {
                (Some(hh), Some(pp)) => t.comp(hh, pp) == g,
                _ => true,
            });
            if consistent && assign_morphisms(s, t, non_ids, factors, k + 1, obj_map, mor_map, opts, budget, found)? {
                return Ok(true);
            }
            mor_map[f.0] = None;
        }
        Ok(false)
    }

    #[allow(clippy::too_many_arguments)]
    fn assign_objects(
        source: &Arc<FinCategory>,
        target: &Arc<FinCategory>,
        non_ids: &[Mor],
        factors: &[Vec<(Mor, Mor)>],
        k: usize,
        obj_map: &mut Vec<Obj>,
        opts: FunctorSearch,
        budget: &mut Budget,
        out: &mut Vec<FunctorData>,
    ) -> Result<bool> {
        let (s, t) = (&**source, &**target);
        if k == s.num_objects() {
            let mut mor_map: Vec<Option<Mor>> = vec![None; s.num_morphisms()];
            for x in s.objects() {
                mor_map[s.id(x).0] = Some(t.id(obj_map[x.0]));
            }
            let mut found = |mm: Vec<Mor>| {
                out.push(FunctorData {
                    source: source.clone(),
                    target: target.clone(),
                    obj_map: obj_map.clone(),
                    mor_map: mm,
                });
                opts.first_only
            };
            let obj_snapshot = obj_map.clone();
            return assign_morphisms(s, t, non_ids, factors, 0, &obj_snapshot, &mut mor_map, opts, budget, &mut found);
        }
        for y in t.objects() {
            budget.charge(1)?;
            if opts.injective_objects && obj_map[..k].contains(&y) {
                continue;
            }
            obj_map[k] = y;
            let x = Obj(k);
            let sizes_ok = !opts.hom_bijective
                || (0..=k).all(|j| {
                    let z = Obj(j);
                    s.hom(x, z).len() == t.hom(y, obj_map[j]).len() && s.hom(z, x).len() == t.hom(obj_map[j], y).len()
                });
            if sizes_ok && assign_objects(source, target, non_ids, factors, k + 1, obj_map, opts, budget, out)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    assign_objects(source, target, &non_ids, &factors, 0, &mut obj_map, opts, &mut budget, &mut out)?;
    debug_assert!(out.iter().all(|f| f.check().is_ok()));
    Ok(out)
}

/// All functors `source → target`, in canonical order.
pub fn enumerate_functors(source: &Arc<FinCategory>, target: &Arc<FinCategory>) -> Result<Vec<FunctorData>> {
    search_functors(source, target, FunctorSearch::default())
}

/// All fully faithful functors `source → target`.
pub fn enumerate_fully_faithful(source: &Arc<FinCategory>, target: &Arc<FinCategory>) -> Result<Vec<FunctorData>> {
    search_functors(
        source,
        target,
        FunctorSearch {
            hom_bijective: true,
            ..Default::default()
        },
    )
}

/// An isomorphism of categories, if one exists.
pub fn find_isomorphism(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> Result<Option<FunctorData>> {
    if a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms() {
        return Ok(None);
    }
    Ok(search_functors(
        a,
        b,
        FunctorSearch {
            injective_objects: true,
            hom_bijective: true,
            first_only: true,
        },
    )?
    .pop())
}

/// An equivalence of categories `a → b`, if one exists.
///
/// Backtracks over object maps with hom-cardinality pruning, then over
/// hom-wise bijections, and finally checks essential surjectivity.
pub fn find_equivalence(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> Result<Option<FunctorData>> {
    Ok(enumerate_fully_faithful(a, b)?
        .into_iter()
        .find(FunctorData::is_essentially_surjective))
}

/// The full subcategory on `objects` and its inclusion functor.
pub fn full_subcategory(c: &Arc<FinCategory>, objects: &[Obj]) -> Result<(Arc<FinCategory>, FunctorData)> {
    let names: Vec<&str> = objects.iter().map(|&x| c.object_name(x)).collect();
    let mut b = CategoryBuilder::new(format!("{}|{}", c.name(), names.join(",")));
    let mut local = vec![usize::MAX; c.num_objects()];
    for &x in objects {
        local[x.0] = b.object(c.object_name(x));
    }
    let mut kept = Vec::new();
    let mut local_mor = vec![usize::MAX; c.num_morphisms()];
    for f in c.morphisms() {
        let (d, e) = (local[c.dom(f).0], local[c.cod(f).0]);
        if d != usize::MAX && e != usize::MAX {
            local_mor[f.0] = b.morphism(c.mor_name(f), d, e);
            kept.push(f);
        }
    }
    for &x in objects {
        b.set_identity(local[x.0], local_mor[c.id(x).0]);
    }
    b.compose_all(|g, f| local_mor[c.comp(kept[g], kept[f]).0]);
    let sub = Arc::new(b.finish()?);
    let obj_map = sub.objects().map(|x| c.object(sub.object_name(x)).unwrap()).collect();
    let mor_map = sub.morphisms().map(|f| c.morphism(sub.mor_name(f)).unwrap()).collect();
    let incl = FunctorData::new(sub.clone(), c.clone(), obj_map, mor_map)?;
    Ok((sub, incl))
}
