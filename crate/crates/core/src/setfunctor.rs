//! Set-valued functors and presheaves on a finite category, and the natural
//! transformations between them.

use std::collections::BTreeMap;
use std::rc::Rc;
use std::sync::Arc;

use crate::category::{opposite, FinCategory, Mor, Obj};
use crate::error::{Error, Result};
use crate::functor::FunctorData;
use crate::search::Csp;
use crate::set::{sort_labeled, tuple_name, FinFunction, FinSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variance {
    Covariant,
    Contravariant,
}

impl Variance {
    pub fn flip(self) -> Self {
        match self {
            Variance::Covariant => Variance::Contravariant,
            Variance::Contravariant => Variance::Covariant,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Variance::Covariant => "covariant",
            Variance::Contravariant => "contravariant",
        }
    }
}

/// A functor `C → Set` (covariant) or `C^op → Set` (contravariant) with
/// finite values.
///
/// For `f: A → B` the action is a function `S(A) → S(B)` in the covariant
/// case and `S(B) → S(A)` in the contravariant case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFunctor {
    base: Arc<FinCategory>,
    variance: Variance,
    sets: Vec<FinSet>,
    actions: Vec<FinFunction>,
}

impl SetFunctor {
    /// Checks typing and functoriality exhaustively.
    pub fn new(base: Arc<FinCategory>, variance: Variance, sets: Vec<FinSet>, actions: Vec<FinFunction>) -> Result<Self> {
        let s = SetFunctor {
            base,
            variance,
            sets,
            actions,
        };
        s.validate()?;
        Ok(s)
    }

    /// Builds the functor from an action given on element indices.
    pub fn from_fn(
        base: Arc<FinCategory>,
        variance: Variance,
        sets: Vec<FinSet>,
        act: impl Fn(Mor, usize) -> usize,
    ) -> Result<Self> {
        let actions = base
            .morphisms()
            .map(|f| {
                let (src, dst) = ends(&base, variance, f);
                let n = sets.get(src.0).map_or(0, FinSet::len);
                let cod = sets.get(dst.0).map_or(0, FinSet::len);
                FinFunction::new((0..n).map(|x| act(f, x)).collect(), cod)
            })
            .collect::<Result<Vec<_>>>()?;
        SetFunctor::new(base, variance, sets, actions)
    }

    /// Builds the functor from unsorted element names.
    ///
    /// `act` works on positions in `elements`; the returned table maps each
    /// such position to its index in the sorted set.
    pub fn from_unsorted(
        base: Arc<FinCategory>,
        variance: Variance,
        elements: Vec<Vec<String>>,
        act: impl Fn(Mor, usize) -> usize,
    ) -> Result<(Self, Vec<Vec<usize>>)> {
        let mut sets = Vec::with_capacity(elements.len());
        let mut ranks = Vec::with_capacity(elements.len());
        for (x, names) in base.objects().zip(elements) {
            let labeled: Vec<(String, usize)> = names.into_iter().enumerate().map(|(i, n)| (n, i)).collect();
            let (names, order) = sort_labeled(labeled)?;
            let mut rank = vec![0; order.len()];
            for (r, &i) in order.iter().enumerate() {
                rank[i] = r;
            }
            sets.push(FinSet::from_sorted(base.object_name(x), names));
            ranks.push(rank);
        }
        let order: Vec<Vec<usize>> = ranks
            .iter()
            .map(|rank| {
                let mut o = vec![0; rank.len()];
                for (i, &r) in rank.iter().enumerate() {
                    o[r] = i;
                }
                o
            })
            .collect();
        let s = SetFunctor::from_fn(base.clone(), variance, sets, |f, x| {
            let (src, dst) = ends(&base, variance, f);
            ranks[dst.0][act(f, order[src.0][x])]
        })?;
        Ok((s, ranks))
    }

    /// The constant functor at `set`.
    pub fn constant(base: Arc<FinCategory>, variance: Variance, set: FinSet) -> Self {
        let sets = base
            .objects()
            .map(|x| FinSet::from_sorted(base.object_name(x), set.elements().to_vec()))
            .collect();
        let actions = base.morphisms().map(|_| FinFunction::identity(set.len())).collect();
        SetFunctor {
            base,
            variance,
            sets,
            actions,
        }
    }

    /// The constant one-element functor.
    pub fn terminal(base: Arc<FinCategory>, variance: Variance) -> Self {
        SetFunctor::constant(base, variance, FinSet::from_sorted("1", vec!["*".into()]))
    }

    /// The functor with empty values.
    pub fn empty(base: Arc<FinCategory>, variance: Variance) -> Self {
        SetFunctor::constant(base, variance, FinSet::empty("0"))
    }

    pub fn validate(&self) -> Result<()> {
        let c = &*self.base;
        let bad = |m: String| Err(Error::InvalidSetFunctor(m));
        if self.sets.len() != c.num_objects() || self.actions.len() != c.num_morphisms() {
            return bad("sets or actions do not cover the base".into());
        }
        for f in c.morphisms() {
            let (src, dst) = self.action_ends(f);
            let a = &self.actions[f.0];
            if a.dom_len() != self.sets[src.0].len() || a.cod_len() != self.sets[dst.0].len() {
                return bad(format!("action of `{}` has the wrong type", c.mor_name(f)));
            }
        }
        for x in c.objects() {
            if self.actions[c.id(x).0] != FinFunction::identity(self.sets[x.0].len()) {
                return bad(format!("identity of `{}` does not act trivially", c.object_name(x)));
            }
        }
        for f in c.morphisms() {
            for &g in c.outgoing(c.cod(f)) {
                let gf = &self.actions[c.comp(g, f).0];
                let expected = match self.variance {
                    Variance::Covariant => self.actions[g.0].after(&self.actions[f.0]),
                    Variance::Contravariant => self.actions[f.0].after(&self.actions[g.0]),
                };
                if *gf != expected {
                    return bad(format!(
                        "action does not respect `{} ∘ {}`",
                        c.mor_name(g),
                        c.mor_name(f)
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn set(&self, x: Obj) -> &FinSet {
        &self.sets[x.0]
    }

    pub fn sets(&self) -> &[FinSet] {
        &self.sets
    }

    pub fn action(&self, f: Mor) -> &FinFunction {
        &self.actions[f.0]
    }

    pub fn actions(&self) -> &[FinFunction] {
        &self.actions
    }

    /// Applies the action of `f` to element `x`.
    pub fn act(&self, f: Mor, x: usize) -> usize {
        self.actions[f.0].apply(x)
    }

    /// The objects `(from, to)` between which the action of `f` runs.
    pub fn action_ends(&self, f: Mor) -> (Obj, Obj) {
        ends(&self.base, self.variance, f)
    }

    pub fn total_size(&self) -> usize {
        self.sets.iter().map(FinSet::len).sum()
    }

    /// `S ∘ D` for a functor `D: J → C` (covariant `S`), or `S ∘ D^op`.
    pub fn precompose(&self, d: &FunctorData) -> Result<SetFunctor> {
        if **d.target() != *self.base {
            return Err(Error::BaseMismatch);
        }
        let j = d.source().clone();
        let sets = j
            .objects()
            .map(|x| FinSet::from_sorted(j.object_name(x), self.sets[d.ob(x).0].elements().to_vec()))
            .collect();
        let actions = j.morphisms().map(|f| self.actions[d.mor(f).0].clone()).collect();
        Ok(SetFunctor {
            base: j,
            variance: self.variance,
            sets,
            actions,
        })
    }

    /// The same data seen with the opposite variance on the opposite base.
    pub fn dual(&self) -> SetFunctor {
        SetFunctor {
            base: Arc::new(opposite(&self.base)),
            variance: self.variance.flip(),
            sets: self.sets.clone(),
            actions: self.actions.clone(),
        }
    }

    /// A covariant view: `self` if covariant, otherwise [`SetFunctor::dual`].
    pub fn as_covariant(&self) -> SetFunctor {
        match self.variance {
            Variance::Covariant => self.clone(),
            Variance::Contravariant => self.dual(),
        }
    }

    /// The pointwise coproduct; elements are tagged `0:` and `1:`.
    pub fn coproduct(&self, other: &SetFunctor) -> Result<SetFunctor> {
        self.check_compatible(other)?;
        let elements = self
            .base
            .objects()
            .map(|x| {
                let left = self.sets[x.0].elements().iter().map(|e| format!("0:{e}"));
                let right = other.sets[x.0].elements().iter().map(|e| format!("1:{e}"));
                left.chain(right).collect()
            })
            .collect();
        let (s, _) = SetFunctor::from_unsorted(self.base.clone(), self.variance, elements, |f, x| {
            let (src, _) = self.action_ends(f);
            let n = self.sets[src.0].len();
            if x < n {
                self.act(f, x)
            } else {
                let (_, dst) = self.action_ends(f);
                self.sets[dst.0].len() + other.act(f, x - n)
            }
        })?;
        Ok(s)
    }

    /// The pointwise product; elements are tuple names `(x,y)`.
    pub fn product(&self, other: &SetFunctor) -> Result<SetFunctor> {
        self.check_compatible(other)?;
        let elements = self
            .base
            .objects()
            .map(|x| {
                let mut v = Vec::new();
                for a in self.sets[x.0].elements() {
                    for b in other.sets[x.0].elements() {
                        v.push(tuple_name(&[a, b]));
                    }
                }
                v
            })
            .collect();
        let (s, _) = SetFunctor::from_unsorted(self.base.clone(), self.variance, elements, |f, i| {
            let (src, dst) = self.action_ends(f);
            let m = other.sets[src.0].len();
            let (a, b) = (i / m, i % m);
            self.act(f, a) * other.sets[dst.0].len() + other.act(f, b)
        })?;
        Ok(s)
    }

    /// The quotient by the equivalence `u ~ v` iff `key(A, u) == key(A, v)`.
    ///
    /// The key must be compatible with the action. Each class is named by its
    /// least member.
    pub fn quotient(&self, key: impl Fn(Obj, usize) -> usize) -> SetFunctor {
        let c = &self.base;
        let mut class_of: Vec<Vec<usize>> = Vec::new();
        let mut names: Vec<Vec<String>> = Vec::new();
        for x in c.objects() {
            let mut classes: BTreeMap<usize, usize> = BTreeMap::new();
            let mut cls = Vec::new();
            let mut nm: Vec<String> = Vec::new();
            for u in 0..self.sets[x.0].len() {
                let k = key(x, u);
                let next = classes.len();
                let id = *classes.entry(k).or_insert(next);
                if id == nm.len() {
                    // Elements are sorted, so the first member is the least.
                    nm.push(self.sets[x.0].element(u).to_string());
                }
                cls.push(id);
            }
            class_of.push(cls);
            names.push(nm);
        }
        let reps: Vec<Vec<usize>> = class_of
            .iter()
            .map(|cls| {
                let mut r = vec![usize::MAX; cls.iter().max().map_or(0, |m| m + 1)];
                for (u, &k) in cls.iter().enumerate() {
                    if r[k] == usize::MAX {
                        r[k] = u;
                    }
                }
                r
            })
            .collect();
        let (s, _) = SetFunctor::from_unsorted(c.clone(), self.variance, names, |f, k| {
            let (src, dst) = self.action_ends(f);
            class_of[dst.0][self.act(f, reps[src.0][k])]
        })
        .expect("quotient by a congruence is functorial");
        s
    }

    fn check_compatible(&self, other: &SetFunctor) -> Result<()> {
        if *self.base != *other.base {
            return Err(Error::BaseMismatch);
        }
        if self.variance != other.variance {
            return Err(Error::VarianceMismatch);
        }
        Ok(())
    }
}

fn ends(c: &FinCategory, variance: Variance, f: Mor) -> (Obj, Obj) {
    match variance {
        Variance::Covariant => (c.dom(f), c.cod(f)),
        Variance::Contravariant => (c.cod(f), c.dom(f)),
    }
}

/// `C(x, −)` (covariant) or `C(−, x)` (contravariant).
pub fn hom_functor(c: &Arc<FinCategory>, x: Obj, variance: Variance) -> SetFunctor {
    let homs: Vec<&[Mor]> = c
        .objects()
        .map(|a| match variance {
            Variance::Covariant => c.hom(x, a),
            Variance::Contravariant => c.hom(a, x),
        })
        .collect();
    let sets = c
        .objects()
        .map(|a| {
            let names = homs[a.0].iter().map(|&f| c.mor_name(f).to_string()).collect();
            FinSet::from_sorted(c.object_name(a), names)
        })
        .collect();
    let actions = c
        .morphisms()
        .map(|g| {
            let (src, dst) = ends(c, variance, g);
            let map = homs[src.0]
                .iter()
                .map(|&h| {
                    let r = match variance {
                        Variance::Covariant => c.comp(g, h),
                        Variance::Contravariant => c.comp(h, g),
                    };
                    homs[dst.0].binary_search(&r).expect("composite lies in the hom-set")
                })
                .collect();
            FinFunction::new_unchecked(map, homs[dst.0].len())
        })
        .collect();
    SetFunctor {
        base: c.clone(),
        variance,
        sets,
        actions,
    }
}

/// Index of morphism `f` in the value of `hom_functor` at `a`.
pub fn hom_index(c: &FinCategory, f: Mor) -> usize {
    c.hom(c.dom(f), c.cod(f)).binary_search(&f).expect("morphism in its hom-set")
}

/// A natural transformation between set functors, one function per object.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NatTransformation {
    pub components: Vec<FinFunction>,
}

impl NatTransformation {
    pub fn identity(s: &SetFunctor) -> Self {
        NatTransformation {
            components: s.sets.iter().map(|x| FinFunction::identity(x.len())).collect(),
        }
    }

    pub fn component(&self, x: Obj) -> &FinFunction {
        &self.components[x.0]
    }

    /// Checks that `self: s ⇒ t` is well typed and natural.
    pub fn check(&self, s: &SetFunctor, t: &SetFunctor) -> Result<()> {
        s.check_compatible(t)?;
        let c = &*s.base;
        if self.components.len() != c.num_objects() {
            return Err(Error::NotNatural("wrong number of components".into()));
        }
        for x in c.objects() {
            let a = &self.components[x.0];
            if a.dom_len() != s.set(x).len() || a.cod_len() != t.set(x).len() {
                return Err(Error::NotNatural(format!("component at `{}` has the wrong type", c.object_name(x))));
            }
        }
        for f in c.morphisms() {
            let (src, dst) = s.action_ends(f);
            let lhs = t.action(f).after(&self.components[src.0]);
            let rhs = self.components[dst.0].after(s.action(f));
            if lhs != rhs {
                return Err(Error::NotNatural(format!("square at `{}` fails", c.mor_name(f))));
            }
        }
        Ok(())
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &NatTransformation) -> NatTransformation {
        NatTransformation {
            components: self
                .components
                .iter()
                .zip(&next.components)
                .map(|(a, b)| b.after(a))
                .collect(),
        }
    }

    pub fn is_isomorphism(&self) -> bool {
        self.components.iter().all(FinFunction::is_bijective)
    }

    pub fn inverse(&self) -> Option<NatTransformation> {
        if !self.is_isomorphism() {
            return None;
        }
        let components = self
            .components
            .iter()
            .map(|a| {
                let mut inv = vec![0; a.dom_len()];
                for (x, &y) in a.table().iter().enumerate() {
                    inv[y] = x;
                }
                FinFunction::new_unchecked(inv, a.dom_len())
            })
            .collect();
        Some(NatTransformation { components })
    }
}

/// Variables of the naturality problem: one per `(object, element of s)`.
pub(crate) struct NatProblem {
    pub(crate) csp: Csp,
    pub(crate) offsets: Vec<usize>,
}

impl NatProblem {
    pub(crate) fn new(s: &SetFunctor, t: &SetFunctor) -> Result<Self> {
        s.check_compatible(t)?;
        let c = &*s.base;
        let mut offsets = Vec::with_capacity(c.num_objects());
        let mut domains = Vec::new();
        for x in c.objects() {
            offsets.push(domains.len());
            for _ in 0..s.set(x).len() {
                domains.push((0..t.set(x).len()).collect());
            }
        }
        let mut csp = Csp::new(domains);
        let tables: Vec<Rc<Vec<usize>>> = t.actions.iter().map(|a| Rc::new(a.table().to_vec())).collect();
        for f in c.morphisms().filter(|&f| !c.is_identity(f)) {
            let (src, dst) = s.action_ends(f);
            for u in 0..s.set(src).len() {
                // α_dst(s(f) u) = t(f)(α_src u)
                csp.link(
                    offsets[src.0] + u,
                    Some(tables[f.0].clone()),
                    offsets[dst.0] + s.act(f, u),
                    None,
                );
            }
        }
        Ok(NatProblem { csp, offsets })
    }

    pub(crate) fn require_bijective(&mut self, s: &SetFunctor, t: &SetFunctor) -> bool {
        let c = &*s.base;
        for x in c.objects() {
            if s.set(x).len() != t.set(x).len() {
                return false;
            }
            let n = s.set(x).len();
            self.csp.distinct((self.offsets[x.0]..self.offsets[x.0] + n).collect());
        }
        true
    }

    pub(crate) fn decode(&self, s: &SetFunctor, t: &SetFunctor, sol: &[usize]) -> NatTransformation {
        let components = s
            .base
            .objects()
            .map(|x| {
                let n = s.set(x).len();
                let o = self.offsets[x.0];
                FinFunction::new_unchecked(sol[o..o + n].to_vec(), t.set(x).len())
            })
            .collect();
        NatTransformation { components }
    }
}

/// Every natural transformation `s ⇒ t`, found by direct search over
/// componentwise functions.
pub fn nat_transformations_direct(s: &SetFunctor, t: &SetFunctor) -> Result<Vec<NatTransformation>> {
    let p = NatProblem::new(s, t)?;
    Ok(p.csp.solve_all()?.iter().map(|sol| p.decode(s, t, sol)).collect())
}

/// Every natural isomorphism `s ⇒ t`.
pub fn natural_isos(s: &SetFunctor, t: &SetFunctor) -> Result<Vec<NatTransformation>> {
    let mut p = NatProblem::new(s, t)?;
    if !p.require_bijective(s, t) {
        return Ok(Vec::new());
    }
    Ok(p.csp.solve_all()?.iter().map(|sol| p.decode(s, t, sol)).collect())
}

/// The canonically least natural isomorphism `s ⇒ t`, if any.
pub fn natural_iso_search(s: &SetFunctor, t: &SetFunctor) -> Result<Option<NatTransformation>> {
    let mut p = NatProblem::new(s, t)?;
    if !p.require_bijective(s, t) {
        return Ok(None);
    }
    Ok(p.csp.solve_first()?.map(|sol| p.decode(s, t, &sol)))
}

/// The transformation `C(x, −) ⇒ s` (or `C(−, x) ⇒ s`) determined by the
/// element `u ∈ s(x)`.
pub fn yoneda_transformation(s: &SetFunctor, x: Obj, u: usize) -> NatTransformation {
    let c = &*s.base;
    let components = c
        .objects()
        .map(|a| {
            let hom = match s.variance {
                Variance::Covariant => c.hom(x, a),
                Variance::Contravariant => c.hom(a, x),
            };
            FinFunction::new_unchecked(hom.iter().map(|&f| s.act(f, u)).collect(), s.set(a).len())
        })
        .collect();
    NatTransformation { components }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn arc(c: FinCategory) -> Arc<FinCategory> {
        Arc::new(c)
    }

    #[test]
    fn hom_functor_sizes() {
        let arr = arc(catalog::arr());
        let (o0, o1) = (arr.object("0").unwrap(), arr.object("1").unwrap());
        let h0 = hom_functor(&arr, o0, Variance::Covariant);
        assert_eq!((h0.set(o0).len(), h0.set(o1).len()), (1, 1));
        let h1 = hom_functor(&arr, o1, Variance::Contravariant);
        assert_eq!(h1.set(o0).elements(), ["a"]);
        assert_eq!(h1.set(o1).elements(), ["id_1"]);
        h0.validate().unwrap();
        h1.validate().unwrap();
        let one = arc(catalog::one());
        let h = hom_functor(&one, Obj(0), Variance::Covariant);
        assert_eq!(h.set(Obj(0)).len(), 1);
    }

    #[test]
    fn nat_direct_examples() {
        let arr = arc(catalog::arr());
        let (o0, o1) = (arr.object("0").unwrap(), arr.object("1").unwrap());
        let h0 = hom_functor(&arr, o0, Variance::Covariant);
        let h1 = hom_functor(&arr, o1, Variance::Covariant);
        assert_eq!(nat_transformations_direct(&h0, &h0).unwrap().len(), 1);
        assert_eq!(nat_transformations_direct(&h0, &h1).unwrap().len(), 0);
        let t = SetFunctor::terminal(arr.clone(), Variance::Covariant);
        assert_eq!(nat_transformations_direct(&t, &t).unwrap().len(), 1);
        assert!(matches!(
            nat_transformations_direct(&h0, &h0.dual()),
            Err(Error::BaseMismatch)
        ));
    }

    #[test]
    fn natural_iso_examples() {
        let arr = arc(catalog::arr());
        let (o0, o1) = (arr.object("0").unwrap(), arr.object("1").unwrap());
        let h0 = hom_functor(&arr, o0, Variance::Covariant);
        let h1 = hom_functor(&arr, o1, Variance::Covariant);
        assert_eq!(natural_isos(&h0, &h0).unwrap().len(), 1);
        assert_eq!(natural_iso_search(&h0, &h0).unwrap(), Some(NatTransformation::identity(&h0)));
        assert_eq!(natural_iso_search(&h0, &h1).unwrap(), None);
    }

    #[test]
    fn yoneda_elements_give_all_transformations() {
        let c = arc(catalog::split_idem());
        for x in c.objects() {
            let h = hom_functor(&c, x, Variance::Covariant);
            for y in c.objects() {
                let s = hom_functor(&c, y, Variance::Covariant);
                let all = nat_transformations_direct(&h, &s).unwrap();
                assert_eq!(all.len(), s.set(x).len());
                for u in 0..s.set(x).len() {
                    let a = yoneda_transformation(&s, x, u);
                    a.check(&h, &s).unwrap();
                    assert!(all.contains(&a));
                }
            }
        }
    }

    #[test]
    fn broken_action_is_rejected() {
        let idem = arc(catalog::idem());
        let set = FinSet::new("S", ["a", "b"]).unwrap();
        // e acting as a swap is not idempotent.
        let r = SetFunctor::from_fn(idem.clone(), Variance::Covariant, vec![set], |f, x| {
            if idem.is_identity(f) {
                x
            } else {
                1 - x
            }
        });
        assert!(matches!(r, Err(Error::InvalidSetFunctor(_))));
    }

    #[test]
    fn coproduct_and_product_sizes() {
        let c = arc(catalog::split_idem());
        let x = c.object("x").unwrap();
        let h = hom_functor(&c, x, Variance::Covariant);
        let sum = h.coproduct(&h).unwrap();
        let prod = h.product(&h).unwrap();
        for a in c.objects() {
            assert_eq!(sum.set(a).len(), 2 * h.set(a).len());
            assert_eq!(prod.set(a).len(), h.set(a).len().pow(2));
        }
    }
}
