//! Idempotents and their splittings, Cauchy points, the extension category
//! `C'`, the Karoubi envelope, retracts of representables and universal
//! retractions of weighted cones.

use std::sync::Arc;

use crate::cap::check_size;
use crate::category::{CategoryBuilder, FinCategory, Mor, Obj};
use crate::cones::{check_cone, is_limit_cone, WeightedCone, WeightedDiagram};
use crate::ends::{pairing, PairingResult};
use crate::error::{Error, Result};
use crate::extend::EXTRA;
use crate::functor::FunctorData;
use crate::set::FinSet;
use crate::setfunctor::{
    hom_functor, hom_index, nat_transformations_direct, yoneda_transformation, NatTransformation, SetFunctor,
    Variance,
};

/// An idempotent `e: X → X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Idempotent {
    pub object: Obj,
    pub morphism: Mor,
}

/// A splitting `e = ι ∘ π` with `π ∘ ι = id_E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Splitting {
    pub through: Obj,
    pub section: Mor,
    pub retraction: Mor,
}

pub fn is_idempotent(c: &FinCategory, e: Mor) -> bool {
    c.compose(e, e) == Some(e)
}

/// All idempotents of `c`, in morphism order.
pub fn idempotents(c: &FinCategory) -> Vec<Idempotent> {
    c.morphisms()
        .filter(|&e| is_idempotent(c, e))
        .map(|e| Idempotent {
            object: c.dom(e),
            morphism: e,
        })
        .collect()
}

/// The least splitting of `e`, searching objects, then sections, then
/// retractions in index order.
pub fn split_idempotent(c: &FinCategory, e: Mor) -> Option<Splitting> {
    let x = c.dom(e);
    for through in c.objects() {
        for &section in c.hom(through, x) {
            for &retraction in c.hom(x, through) {
                if c.comp(retraction, section) == c.id(through) && c.comp(section, retraction) == e {
                    return Some(Splitting {
                        through,
                        section,
                        retraction,
                    });
                }
            }
        }
    }
    None
}

/// Whether every idempotent splits, with the ones that do not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completeness {
    pub complete: bool,
    pub non_split: Vec<Idempotent>,
}

pub fn is_cauchy_complete(c: &FinCategory) -> Completeness {
    let non_split: Vec<Idempotent> = idempotents(c)
        .into_iter()
        .filter(|e| split_idempotent(c, e.morphism).is_none())
        .collect();
    Completeness {
        complete: non_split.is_empty(),
        non_split,
    }
}

/// `Inv_R(e)(A) = {f: X → A | f ∘ e = f}`, a subfunctor of `C(X, −)`.
pub fn inv_r(c: &Arc<FinCategory>, e: Mor) -> SetFunctor {
    invariant_subfunctor(c, Variance::Covariant, right_invariant(c, e))
}

/// `Inv_L(e)(A) = {p: A → X | e ∘ p = p}`, a subfunctor of `C(−, X)`.
pub fn inv_l(c: &Arc<FinCategory>, e: Mor) -> SetFunctor {
    invariant_subfunctor(c, Variance::Contravariant, left_invariant(c, e))
}

fn right_invariant(c: &FinCategory, e: Mor) -> Vec<Vec<Mor>> {
    let x = c.dom(e);
    c.objects()
        .map(|a| c.hom(x, a).iter().copied().filter(|&f| c.comp(f, e) == f).collect())
        .collect()
}

fn left_invariant(c: &FinCategory, e: Mor) -> Vec<Vec<Mor>> {
    let x = c.dom(e);
    c.objects()
        .map(|a| c.hom(a, x).iter().copied().filter(|&p| c.comp(e, p) == p).collect())
        .collect()
}

/// The subfunctor of a hom functor on `members`, which are sorted by
/// index and therefore by name.
fn invariant_subfunctor(c: &Arc<FinCategory>, variance: Variance, members: Vec<Vec<Mor>>) -> SetFunctor {
    let sets = c
        .objects()
        .map(|a| {
            let names = members[a.0].iter().map(|&f| c.mor_name(f).to_string()).collect();
            FinSet::from_sorted(c.object_name(a), names)
        })
        .collect();
    SetFunctor::from_fn(c.clone(), variance, sets, |g, i| match variance {
        Variance::Covariant => {
            let r = c.comp(g, members[c.dom(g).0][i]);
            members[c.cod(g).0].binary_search(&r).expect("invariance is preserved")
        }
        Variance::Contravariant => {
            let r = c.comp(members[c.cod(g).0][i], g);
            members[c.dom(g).0].binary_search(&r).expect("invariance is preserved")
        }
    })
    .expect("invariant morphisms form a subfunctor")
}

/// A Cauchy point `(F, P, c, i)`: a functor `F`, a presheaf `P`, a natural
/// family `c(p, f): A → B` for `p ∈ P(A)`, `f ∈ F(B)`, and a class
/// `i = [X, π, ι]` of `⟨P, F⟩` acting as the identity of the virtual object.
#[derive(Debug, Clone)]
pub struct CauchyPoint {
    functor: SetFunctor,
    presheaf: SetFunctor,
    /// `table[A * n + B][p * |F(B)| + f] = c(p, f)`.
    table: Vec<Vec<Mor>>,
    pairing: PairingResult,
    identity: usize,
    representative: (Obj, usize, usize),
}

impl CauchyPoint {
    /// Builds and validates a Cauchy point. `representative` is a member
    /// `(X, π, ι)` of the distinguished class.
    pub fn new(
        functor: SetFunctor,
        presheaf: SetFunctor,
        c: impl Fn(Obj, usize, Obj, usize) -> Mor,
        representative: (Obj, usize, usize),
    ) -> Result<Self> {
        if functor.variance() != Variance::Covariant || presheaf.variance() != Variance::Contravariant {
            return Err(Error::VarianceMismatch);
        }
        let pairing = pairing(&presheaf, &functor)?;
        let base = functor.base().clone();
        let (x, pi, iota) = representative;
        if x.0 >= base.num_objects() || pi >= presheaf.set(x).len() || iota >= functor.set(x).len() {
            return Err(Error::ValidationFailed("representative out of range".into()));
        }
        let identity = pairing.class(x, pi, iota);
        let n = base.num_objects();
        check_size(presheaf.total_size() as u128 * functor.total_size() as u128)?;
        let mut table = Vec::with_capacity(n * n);
        for a in base.objects() {
            for b in base.objects() {
                let mut row = Vec::with_capacity(presheaf.set(a).len() * functor.set(b).len());
                for p in 0..presheaf.set(a).len() {
                    for f in 0..functor.set(b).len() {
                        row.push(c(a, p, b, f));
                    }
                }
                table.push(row);
            }
        }
        let pt = CauchyPoint {
            functor,
            presheaf,
            table,
            pairing,
            identity,
            representative,
        };
        pt.validate()?;
        Ok(pt)
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        self.functor.base()
    }

    /// `F`, the virtual arrows out of the point.
    pub fn functor(&self) -> &SetFunctor {
        &self.functor
    }

    /// `P`, the virtual arrows into the point.
    pub fn presheaf(&self) -> &SetFunctor {
        &self.presheaf
    }

    /// `⟨P, F⟩`, the endomorphisms of the point.
    pub fn pairing(&self) -> &PairingResult {
        &self.pairing
    }

    /// Index of the class `i` in [`CauchyPoint::pairing`].
    pub fn identity(&self) -> usize {
        self.identity
    }

    /// The chosen member `(X, π, ι)` of `i`.
    pub fn representative(&self) -> (Obj, usize, usize) {
        self.representative
    }

    /// `c(p, f): A → B` for `p ∈ P(A)` and `f ∈ F(B)`.
    pub fn c(&self, a: Obj, p: usize, b: Obj, f: usize) -> Mor {
        let n = self.base().num_objects();
        self.table[a.0 * n + b.0][p * self.functor.set(b).len() + f]
    }

    /// Checks typing, naturality of `c` in both arguments, and the identity
    /// laws `c(π, f)_* ι = f`, `c(p, ι)^* π = p` on every member of `i`.
    pub fn validate(&self) -> Result<()> {
        let (cat, fun, pre) = (&**self.base(), &self.functor, &self.presheaf);
        if **pre.base() != *cat {
            return Err(Error::BaseMismatch);
        }
        let bad = |msg: String| Err(Error::ValidationFailed(msg));
        for a in cat.objects() {
            for b in cat.objects() {
                for p in 0..pre.set(a).len() {
                    for f in 0..fun.set(b).len() {
                        let m = self.c(a, p, b, f);
                        if m.0 >= cat.num_morphisms() || cat.dom(m) != a || cat.cod(m) != b {
                            return bad(format!(
                                "c({}, {}) is not a morphism {} → {}",
                                pre.set(a).element(p),
                                fun.set(b).element(f),
                                cat.object_name(a),
                                cat.object_name(b)
                            ));
                        }
                    }
                }
            }
        }
        for g in cat.morphisms() {
            let (a0, a1) = (cat.dom(g), cat.cod(g));
            for b in cat.objects() {
                for f in 0..fun.set(b).len() {
                    for p in 0..pre.set(a1).len() {
                        if self.c(a0, pre.act(g, p), b, f) != cat.comp(self.c(a1, p, b, f), g) {
                            return bad(format!("c is not natural in its first argument at `{}`", cat.mor_name(g)));
                        }
                    }
                }
            }
            for a in cat.objects() {
                for p in 0..pre.set(a).len() {
                    for f in 0..fun.set(a0).len() {
                        if self.c(a, p, a1, fun.act(g, f)) != cat.comp(g, self.c(a, p, a0, f)) {
                            return bad(format!("c is not natural in its second argument at `{}`", cat.mor_name(g)));
                        }
                    }
                }
            }
        }
        for &(x, pi, iota) in &self.pairing.members[self.identity] {
            for a in cat.objects() {
                for f in 0..fun.set(a).len() {
                    if fun.act(self.c(x, pi, a, f), iota) != f {
                        return bad(format!("identity law fails for `{}` at `{}`", fun.set(a).element(f), cat.object_name(a)));
                    }
                }
                for p in 0..pre.set(a).len() {
                    if pre.act(self.c(a, p, x, iota), pi) != p {
                        return bad(format!("identity law fails for `{}` at `{}`", pre.set(a).element(p), cat.object_name(a)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The Cauchy point of an idempotent: `(Inv_R, Inv_L, composition, [X,e,e])`.
pub fn cauchy_point_from_idempotent(c: &Arc<FinCategory>, e: Mor) -> Result<CauchyPoint> {
    if !is_idempotent(c, e) {
        return Err(Error::ValidationFailed(format!("`{}` is not idempotent", c.mor_name(e))));
    }
    let x = c.dom(e);
    let right = right_invariant(c, e);
    let left = left_invariant(c, e);
    let f = invariant_subfunctor(c, Variance::Covariant, right.clone());
    let p = invariant_subfunctor(c, Variance::Contravariant, left.clone());
    let pi = left[x.0].binary_search(&e).expect("e is left invariant");
    let iota = right[x.0].binary_search(&e).expect("e is right invariant");
    CauchyPoint::new(f, p, |a, q, b, g| c.comp(right[b.0][g], left[a.0][q]), (x, pi, iota))
}

/// The category `C'`: `C` plus an object `E` with `hom(E, A) = F(A)`,
/// `hom(A, E) = P(A)` and `hom(E, E) = ⟨P, F⟩`.
///
/// Arrows out of `E` are named `__f:<A>:<element>`, arrows into `E` are
/// `__p:<A>:<element>` and endomorphisms of `E` are `__e:<class>`.
#[derive(Debug, Clone)]
pub struct CauchyExtension {
    category: Arc<FinCategory>,
    base: Arc<FinCategory>,
    extra: Obj,
    objects: Vec<Obj>,
    morphisms: Vec<Mor>,
    outgoing: Vec<Vec<Mor>>,
    incoming: Vec<Vec<Mor>>,
    endos: Vec<Mor>,
}

impl CauchyExtension {
    pub fn category(&self) -> &Arc<FinCategory> {
        &self.category
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    /// The extra object `E`.
    pub fn extra(&self) -> Obj {
        self.extra
    }

    pub fn object(&self, x: Obj) -> Obj {
        self.objects[x.0]
    }

    pub fn morphism(&self, f: Mor) -> Mor {
        self.morphisms[f.0]
    }

    /// The arrow `E → A` for element `f` of `F(A)`.
    pub fn out_of_extra(&self, a: Obj, f: usize) -> Mor {
        self.outgoing[a.0][f]
    }

    /// The arrow `A → E` for element `p` of `P(A)`.
    pub fn into_extra(&self, a: Obj, p: usize) -> Mor {
        self.incoming[a.0][p]
    }

    /// The endomorphism of `E` for class `k` of `⟨P, F⟩`.
    pub fn endomorphism(&self, k: usize) -> Mor {
        self.endos[k]
    }

    /// The inclusion `C → C'`, which is fully faithful.
    pub fn inclusion(&self) -> FunctorData {
        FunctorData::new(
            self.base.clone(),
            self.category.clone(),
            self.objects.clone(),
            self.morphisms.clone(),
        )
        .expect("inclusion is a functor")
    }
}

#[derive(Debug, Clone, Copy)]
enum Arrow {
    Base(Mor),
    Out(Obj, usize),
    In(Obj, usize),
    Endo(usize),
}

/// Builds `C'` and checks every category law on it.
///
/// Composites involving endomorphisms of `E` are computed from every
/// member of the classes involved; disagreement is reported as an error.
pub fn cauchy_extension(pt: &CauchyPoint) -> Result<CauchyExtension> {
    let c = pt.base();
    let (fun, pre, pairs) = (&pt.functor, &pt.presheaf, &pt.pairing);
    check_size((c.num_morphisms() + fun.total_size() + pre.total_size() + pairs.len()) as u128)?;
    let mut b = CategoryBuilder::new(format!("{}'", c.name()));
    for x in c.objects() {
        b.object(c.object_name(x));
    }
    let e = b.object(EXTRA);
    let mut kinds = Vec::new();
    let mut base_idx = Vec::new();
    for f in c.morphisms() {
        base_idx.push(b.morphism(c.mor_name(f), c.dom(f).0, c.cod(f).0));
        kinds.push(Arrow::Base(f));
    }
    for x in c.objects() {
        b.set_identity(x.0, base_idx[c.id(x).0]);
    }
    let mut out_idx = Vec::new();
    let mut in_idx = Vec::new();
    for a in c.objects() {
        let name = c.object_name(a);
        let row = (0..fun.set(a).len())
            .map(|f| {
                kinds.push(Arrow::Out(a, f));
                b.morphism(format!("__f:{name}:{}", fun.set(a).element(f)), e, a.0)
            })
            .collect::<Vec<_>>();
        out_idx.push(row);
        let row = (0..pre.set(a).len())
            .map(|p| {
                kinds.push(Arrow::In(a, p));
                b.morphism(format!("__p:{name}:{}", pre.set(a).element(p)), a.0, e)
            })
            .collect::<Vec<_>>();
        in_idx.push(row);
    }
    let endo_idx: Vec<usize> = (0..pairs.len())
        .map(|k| {
            kinds.push(Arrow::Endo(k));
            b.morphism(format!("__e:{}", pairs.carrier.element(k)), e, e)
        })
        .collect();
    b.set_identity(e, endo_idx[pt.identity]);

    let mut disagreement = None;
    let mut agree = |values: Vec<usize>, what: &str| -> usize {
        let first = values[0];
        if values.iter().any(|&v| v != first) && disagreement.is_none() {
            disagreement = Some(what.to_string());
        }
        first
    };
    b.compose_all(|g, f| match (kinds[g], kinds[f]) {
        (Arrow::Base(g), Arrow::Base(f)) => base_idx[c.comp(g, f).0],
        (Arrow::Base(g), Arrow::Out(_, u)) => out_idx[c.cod(g).0][fun.act(g, u)],
        (Arrow::In(_, p), Arrow::Base(f)) => in_idx[c.dom(f).0][pre.act(f, p)],
        (Arrow::Out(y, u), Arrow::In(x, p)) => base_idx[pt.c(x, p, y, u).0],
        (Arrow::In(x, p), Arrow::Out(_, u)) => endo_idx[pairs.class(x, p, u)],
        (Arrow::Out(y, u), Arrow::Endo(k)) => {
            let v = agree(
                pairs.members[k].iter().map(|&(a, p, f)| fun.act(pt.c(a, p, y, u), f)).collect(),
                "postcomposition with an endomorphism of E",
            );
            out_idx[y.0][v]
        }
        (Arrow::Endo(k), Arrow::In(x, q)) => {
            let v = agree(
                pairs.members[k].iter().map(|&(a, p, f)| pre.act(pt.c(x, q, a, f), p)).collect(),
                "precomposition with an endomorphism of E",
            );
            in_idx[x.0][v]
        }
        (Arrow::Endo(k2), Arrow::Endo(k1)) => {
            let v = agree(
                pairs.members[k1]
                    .iter()
                    .flat_map(|&(a, p, f)| {
                        pairs.members[k2]
                            .iter()
                            .map(move |&(a2, p2, f2)| pairs.class(a, pre.act(pt.c(a, p, a2, f2), p2), f))
                    })
                    .collect(),
                "composition of endomorphisms of E",
            );
            endo_idx[v]
        }
        _ => unreachable!("composable pairs have matching types"),
    });
    if let Some(what) = disagreement {
        return Err(Error::InternalDisagreement(format!("{what} depends on the representative")));
    }
    let category = Arc::new(b.finish()?);
    let find = |name: &str| category.morphism(name).expect("name was registered");
    let objects = c.objects().map(|x| category.object(c.object_name(x)).unwrap()).collect();
    let morphisms = c.morphisms().map(|f| find(c.mor_name(f))).collect();
    let outgoing = c
        .objects()
        .map(|a| {
            fun.set(a)
                .elements()
                .iter()
                .map(|u| find(&format!("__f:{}:{u}", c.object_name(a))))
                .collect()
        })
        .collect();
    let incoming = c
        .objects()
        .map(|a| {
            pre.set(a)
                .elements()
                .iter()
                .map(|u| find(&format!("__p:{}:{u}", c.object_name(a))))
                .collect()
        })
        .collect();
    let endos = pairs.carrier.elements().iter().map(|k| find(&format!("__e:{k}"))).collect();
    let extra = category.object(EXTRA)?;
    Ok(CauchyExtension {
        category,
        base: c.clone(),
        extra,
        objects,
        morphisms,
        outgoing,
        incoming,
        endos,
    })
}

/// The object realizing a Cauchy point, if it is already in `C`.
///
/// Four equivalent criteria are evaluated: `F` representable, `P`
/// representable, some member `(X, π, ι)` of `i` with `c(π, ι) = id_X`, and
/// `C → C'` essentially surjective. The representing objects found must be
/// isomorphic. Any disagreement is an [`Error::InternalDisagreement`].
pub fn realize_cauchy_point(pt: &CauchyPoint) -> Result<Option<Obj>> {
    let c = pt.base();
    let rf = crate::cones::find_representation(&pt.functor).map(|r| r.object);
    let rp = crate::cones::find_representation(&pt.presheaf).map(|r| r.object);
    let split = pt.pairing.members[pt.identity]
        .iter()
        .find(|&&(x, pi, iota)| pt.c(x, pi, x, iota) == c.id(x))
        .map(|&(x, _, _)| x);
    let ess_surj = cauchy_extension(pt)?.inclusion().is_essentially_surjective();
    let verdicts = [rf.is_some(), rp.is_some(), split.is_some(), ess_surj];
    if verdicts.iter().any(|&v| v != verdicts[0]) {
        return Err(Error::InternalDisagreement(format!(
            "realization criteria disagree (F: {}, P: {}, split: {}, essentially surjective: {})",
            verdicts[0], verdicts[1], verdicts[2], verdicts[3]
        )));
    }
    if let (Some(r), Some(r2), Some(x)) = (rf, rp, split) {
        if !c.are_isomorphic(r, r2) || !c.are_isomorphic(r, x) {
            return Err(Error::InternalDisagreement("representing objects are not isomorphic".into()));
        }
    }
    Ok(rf)
}

/// A presentation of `S` as a retract of `C(X, −)` (or `C(−, X)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Retract {
    pub object: Obj,
    /// `ι: S ⇒ hom`.
    pub section: NatTransformation,
    /// `π: hom ⇒ S`, the Yoneda transformation of `element`.
    pub retraction: NatTransformation,
    pub element: usize,
    /// The idempotent `e: X → X` corresponding to `ι ∘ π`.
    pub idempotent: Mor,
}

/// The least retraction of a representable onto `s`, searching objects,
/// then sections in canonical order, then elements of `s(X)`.
pub fn retract_of_representable(s: &SetFunctor) -> Result<Option<Retract>> {
    let c = s.base();
    let identity = NatTransformation::identity(s);
    for x in c.objects() {
        if s.set(x).is_empty() {
            continue;
        }
        let hom = hom_functor(c, x, s.variance());
        for section in nat_transformations_direct(s, &hom)? {
            for u in 0..s.set(x).len() {
                let retraction = yoneda_transformation(s, x, u);
                if section.then(&retraction) == identity {
                    let k = section.component(x).apply(u);
                    let idempotent = c.hom(x, x)[k];
                    return Ok(Some(Retract {
                        object: x,
                        section,
                        retraction,
                        element: u,
                        idempotent,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Whether `w` is an absolute weight, that is, a retract of a
/// representable.
pub fn is_absolute_weight(w: &SetFunctor) -> Result<bool> {
    Ok(retract_of_representable(w)?.is_some())
}

/// The Karoubi envelope: objects are the idempotents `(X, e)` and morphisms
/// `(X, e) → (X', e')` are the `g: X → X'` with `g ∘ e = g = e' ∘ g`.
///
/// Objects are named `(X,e)` and morphisms `g:(X,e)->(X',e')`. The identity
/// of `(X, e)` is `e`.
#[derive(Debug, Clone)]
pub struct KaroubiCategory {
    category: Arc<FinCategory>,
    base: Arc<FinCategory>,
    idempotents: Vec<Idempotent>,
    underlying: Vec<Mor>,
    embedding: FunctorData,
}

impl KaroubiCategory {
    pub fn category(&self) -> &Arc<FinCategory> {
        &self.category
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    /// The idempotent behind an object.
    pub fn idempotent(&self, x: Obj) -> Idempotent {
        self.idempotents[x.0]
    }

    /// The base morphism behind a morphism.
    pub fn underlying(&self, g: Mor) -> Mor {
        self.underlying[g.0]
    }

    /// The object `(X, e)`.
    pub fn object_of(&self, e: Mor) -> Option<Obj> {
        self.idempotents.iter().position(|i| i.morphism == e).map(Obj)
    }

    /// `C → K(C)`, sending `X` to `(X, id_X)`.
    pub fn embedding(&self) -> &FunctorData {
        &self.embedding
    }
}

pub fn karoubi_envelope(c: &Arc<FinCategory>) -> Result<KaroubiCategory> {
    let idems = idempotents(c);
    let obj_name = |i: &Idempotent| format!("({},{})", c.object_name(i.object), c.mor_name(i.morphism));
    let total: u128 = idems
        .iter()
        .flat_map(|a| idems.iter().map(move |b| c.hom(a.object, b.object).len() as u128))
        .sum();
    check_size(total)?;
    let mut b = CategoryBuilder::new(format!("K({})", c.name()));
    for i in &idems {
        b.object(obj_name(i));
    }
    let mut under = Vec::new();
    let mut index = std::collections::HashMap::new();
    for (s, src) in idems.iter().enumerate() {
        for (t, dst) in idems.iter().enumerate() {
            for &g in c.hom(src.object, dst.object) {
                if c.comp(g, src.morphism) == g && c.comp(dst.morphism, g) == g {
                    let name = format!("{}:{}->{}", c.mor_name(g), obj_name(src), obj_name(dst));
                    let m = b.morphism(name, s, t);
                    if s == t && g == src.morphism {
                        b.set_identity(s, m);
                    }
                    index.insert((s, t, g), m);
                    under.push(g);
                }
            }
        }
    }
    let ends: Vec<(usize, usize)> = (0..b.num_morphisms()).map(|m| (b.dom(m), b.cod(m))).collect();
    b.compose_all(|g, f| index[&(ends[f].0, ends[g].1, c.comp(under[g], under[f]))]);
    let category = Arc::new(b.finish()?);
    let idempotents: Vec<Idempotent> = category
        .objects()
        .map(|x| {
            *idems
                .iter()
                .find(|i| obj_name(i) == category.object_name(x))
                .expect("object was registered")
        })
        .collect();
    let underlying: Vec<Mor> = category
        .morphisms()
        .map(|m| {
            let name = category.mor_name(m);
            let g = &name[..name.find(":(").expect("morphism names carry their type")];
            c.hom(idempotents[category.dom(m).0].object, idempotents[category.cod(m).0].object)
                .iter()
                .copied()
                .find(|&f| c.mor_name(f) == g)
                .expect("underlying morphism exists")
        })
        .collect();
    let obj_map: Vec<Obj> = c
        .objects()
        .map(|x| Obj(idempotents.iter().position(|i| i.morphism == c.id(x)).expect("identities are idempotent")))
        .collect();
    let mor_map = c
        .morphisms()
        .map(|f| {
            let (s, t) = (obj_map[c.dom(f).0], obj_map[c.cod(f).0]);
            *category
                .hom(s, t)
                .iter()
                .find(|&&m| underlying[m.0] == f)
                .expect("every morphism is invariant under identities")
        })
        .collect();
    let embedding = FunctorData::new(c.clone(), category.clone(), obj_map, mor_map)?;
    Ok(KaroubiCategory {
        category,
        base: c.clone(),
        idempotents,
        underlying,
        embedding,
    })
}

/// Morphisms between two Cauchy points: the pairing `⟨P₂, F₁⟩` with its
/// translations to `Nat(P₁, P₂)` and `Nat(F₂, F₁)`.
#[derive(Debug, Clone)]
pub struct CauchyMorphisms {
    pub pairing: PairingResult,
    /// For each class, `α_A(p) = c₁(p, f₁)^* p₂`.
    pub on_presheaves: Vec<NatTransformation>,
    /// For each class, `β_A(f) = c₂(p₂, f)_* f₁`.
    pub on_functors: Vec<NatTransformation>,
}

/// Computes `⟨P₂, F₁⟩` and checks that both translations are well defined
/// on classes, natural, and bijective with inverses
/// `α ↦ [X₁, α(π₁), ι₁]` and `β ↦ [X₂, π₂, β(ι₂)]`.
pub fn cauchy_morphisms(pt1: &CauchyPoint, pt2: &CauchyPoint) -> Result<CauchyMorphisms> {
    if **pt1.base() != **pt2.base() {
        return Err(Error::BaseMismatch);
    }
    let c = pt1.base();
    let (f1, p1, f2, p2) = (&pt1.functor, &pt1.presheaf, &pt2.functor, &pt2.presheaf);
    let pairs = pairing(p2, f1)?;
    let alpha_of = |(x, q, f): (Obj, usize, usize)| NatTransformation {
        components: c
            .objects()
            .map(|a| {
                let map = (0..p1.set(a).len()).map(|p| p2.act(pt1.c(a, p, x, f), q)).collect();
                crate::set::FinFunction::new(map, p2.set(a).len()).expect("values lie in P₂")
            })
            .collect(),
    };
    let beta_of = |(x, q, f): (Obj, usize, usize)| NatTransformation {
        components: c
            .objects()
            .map(|a| {
                let map = (0..f2.set(a).len()).map(|g| f1.act(pt2.c(x, q, a, g), f)).collect();
                crate::set::FinFunction::new(map, f1.set(a).len()).expect("values lie in F₁")
            })
            .collect(),
    };
    let mut on_presheaves = Vec::with_capacity(pairs.len());
    let mut on_functors = Vec::with_capacity(pairs.len());
    for members in &pairs.members {
        let alpha = alpha_of(members[0]);
        let beta = beta_of(members[0]);
        if members.iter().any(|&m| alpha_of(m) != alpha || beta_of(m) != beta) {
            return Err(Error::InternalDisagreement("morphism translation depends on the representative".into()));
        }
        alpha.check(p1, p2)?;
        beta.check(f2, f1)?;
        on_presheaves.push(alpha);
        on_functors.push(beta);
    }
    let (x1, pi1, iota1) = pt1.representative;
    let (x2, pi2, iota2) = pt2.representative;
    let all_alpha = nat_transformations_direct(p1, p2)?;
    let all_beta = nat_transformations_direct(f2, f1)?;
    let round_trip = all_alpha.len() == pairs.len()
        && all_beta.len() == pairs.len()
        && all_alpha.iter().all(|a| {
            let k = pairs.class(x1, a.component(x1).apply(pi1), iota1);
            on_presheaves[k] == *a
        })
        && all_beta.iter().all(|b| {
            let k = pairs.class(x2, pi2, b.component(x2).apply(iota2));
            on_functors[k] == *b
        });
    if !round_trip {
        return Err(Error::InternalDisagreement("morphism translations are not bijective".into()));
    }
    Ok(CauchyMorphisms {
        pairing: pairs,
        on_presheaves,
        on_functors,
    })
}

/// The outcome of checking that `Φ: K(C) → Cauchy points` is an
/// equivalence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiReport {
    pub objects: usize,
    pub morphisms: usize,
    pub functorial: bool,
    pub faithful: bool,
    pub full: bool,
    pub essentially_surjective: bool,
    /// Cauchy points tested for essential surjectivity, one per member of
    /// each identity class.
    pub points_checked: usize,
}

impl PhiReport {
    pub fn passes(&self) -> bool {
        self.functorial && self.faithful && self.full && self.essentially_surjective
    }
}

/// Builds `Φ(X, e)` for every idempotent and `Φ(g) = [X, g, e]` for every
/// morphism of `K(C)`, and checks functoriality, bijectivity on hom-sets,
/// and that every point `Φ(X, e)` is isomorphic to `Φ(X', c(π, ι))` for
/// each member `(X', π, ι)` of its identity class.
pub fn phi_equivalence_check(c: &Arc<FinCategory>) -> Result<PhiReport> {
    let k = karoubi_envelope(c)?;
    let kc = k.category();
    let points: Vec<CauchyPoint> = kc
        .objects()
        .map(|x| cauchy_point_from_idempotent(c, k.idempotent(x).morphism))
        .collect::<Result<_>>()?;
    let index_in = |s: &SetFunctor, x: Obj, g: Mor| s.set(x).index_of(c.mor_name(g)).expect("invariant morphism");
    let n = kc.num_objects();
    let mut homs = Vec::with_capacity(n * n);
    let mut phi = vec![0; kc.num_morphisms()];
    let (mut faithful, mut full, mut functorial) = (true, true, true);
    for a in kc.objects() {
        for b in kc.objects() {
            let m = cauchy_morphisms(&points[a.0], &points[b.0])?;
            let (ia, ib) = (k.idempotent(a), k.idempotent(b));
            let mut hit = vec![false; m.pairing.len()];
            for &g in kc.hom(a, b) {
                let u = k.underlying(g);
                let left = m.pairing.class(
                    ia.object,
                    index_in(&points[b.0].presheaf, ia.object, u),
                    index_in(&points[a.0].functor, ia.object, ia.morphism),
                );
                let right = m.pairing.class(
                    ib.object,
                    index_in(&points[b.0].presheaf, ib.object, ib.morphism),
                    index_in(&points[a.0].functor, ib.object, u),
                );
                functorial &= left == right;
                faithful &= !hit[left];
                hit[left] = true;
                phi[g.0] = left;
            }
            full &= hit.iter().all(|&h| h);
            homs.push(m);
        }
    }
    for a in kc.objects() {
        functorial &= phi[kc.id(a).0] == points[a.0].identity;
    }
    for g in kc.morphisms() {
        for &h in kc.outgoing(kc.cod(g)) {
            let (a, b, d) = (kc.dom(g), kc.cod(g), kc.cod(h));
            let composite = &homs[a.0 * n + d.0].on_presheaves[phi[kc.comp(h, g).0]];
            let first = &homs[a.0 * n + b.0].on_presheaves[phi[g.0]];
            let second = &homs[b.0 * n + d.0].on_presheaves[phi[h.0]];
            functorial &= *composite == first.then(second);
        }
    }
    let mut essentially_surjective = true;
    let mut points_checked = 0;
    for (a, pt) in points.iter().enumerate() {
        for &(x, pi, iota) in &pt.pairing.members[pt.identity] {
            points_checked += 1;
            let e = pt.c(x, pi, x, iota);
            let Some(b) = k.object_of(e) else {
                essentially_surjective = false;
                continue;
            };
            let m = &homs[a * n + b.0];
            essentially_surjective &= m.on_presheaves.iter().any(NatTransformation::is_isomorphism);
        }
    }
    Ok(PhiReport {
        objects: n,
        morphisms: kc.num_morphisms(),
        functorial,
        faithful,
        full,
        essentially_surjective,
        points_checked,
    })
}

/// An eventual retraction `[J, w, π]` of a weighted cone: `π: D(J) → T`
/// with `π ∘ leg(J, w) = id_T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventualRetraction {
    /// Class name in `⟨W, C(D−, T)⟩`.
    pub class: String,
    pub object: Obj,
    pub weight: usize,
    pub retraction: Mor,
}

/// A universal retraction with the number of triangles
/// `g ∘ leg(K, w) = f` it was checked against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalRetraction {
    pub retraction: EventualRetraction,
    pub triangles_checked: usize,
}

/// `⟨W, C(D−, X)⟩`, computed as a pairing over `J^op` so that classes read
/// `[J, w, g]`.
fn retraction_pairing(wd: &WeightedDiagram, x: Obj) -> Result<PairingResult> {
    let c = wd.category();
    let homs = hom_functor(c, x, Variance::Contravariant).precompose(&wd.diagram)?;
    pairing(&wd.weight.dual(), &homs.dual())
}

/// The eventual retractions of a weighted cone, one per class, in class
/// order. Cocones are handled in the opposite category, giving eventual
/// sections.
pub fn eventual_retractions(wd: &WeightedDiagram, cone: &WeightedCone) -> Result<Vec<EventualRetraction>> {
    if !wd.is_limit() {
        return eventual_retractions(&wd.dual(), cone);
    }
    check_cone(wd, cone)?;
    let c = wd.category();
    let d = &wd.diagram;
    let pairs = retraction_pairing(wd, cone.tip)?;
    let id = c.id(cone.tip);
    Ok(pairs
        .members
        .iter()
        .enumerate()
        .filter_map(|(k, members)| {
            let (j, w, r) = members[0];
            let pi = c.hom(d.ob(j), cone.tip)[r];
            (c.comp(pi, cone.legs[j.0][w]) == id).then(|| EventualRetraction {
                class: pairs.carrier.element(k).to_string(),
                object: j,
                weight: w,
                retraction: pi,
            })
        })
        .collect())
}

/// The universal retraction of a weighted cone, if any: an eventual
/// retraction `[J, w, π]` such that for every `f: T → X` each class
/// `[K, v, g]` with `g ∘ leg(K, v) = f` equals `[J, w, f ∘ π]`.
///
/// Universality is checked against every object and arrow of `C`. More than
/// one universal retraction is an [`Error::InternalDisagreement`].
pub fn universal_retraction(wd: &WeightedDiagram, cone: &WeightedCone) -> Result<Option<UniversalRetraction>> {
    if !wd.is_limit() {
        return universal_retraction(&wd.dual(), cone);
    }
    let candidates = eventual_retractions(wd, cone)?;
    if candidates.is_empty() {
        return Ok(None);
    }
    let c = wd.category();
    let d = &wd.diagram;
    let mut universal = vec![true; candidates.len()];
    let mut triangles = 0;
    for x in c.objects() {
        let pairs = retraction_pairing(wd, x)?;
        for &f in c.hom(cone.tip, x) {
            let solutions: Vec<usize> = pairs
                .members
                .iter()
                .enumerate()
                .filter(|(_, m)| {
                    let (kk, v, g) = m[0];
                    c.comp(c.hom(d.ob(kk), x)[g], cone.legs[kk.0][v]) == f
                })
                .map(|(k, _)| k)
                .collect();
            triangles += solutions.len();
            for (r, cand) in candidates.iter().enumerate() {
                let fpi = c.comp(f, cand.retraction);
                let target = pairs.class(cand.object, cand.weight, hom_index(c, fpi));
                universal[r] &= solutions.iter().all(|&k| k == target);
            }
        }
    }
    let mut found = candidates.into_iter().zip(universal).filter(|(_, u)| *u).map(|(r, _)| r);
    let first = found.next();
    if found.next().is_some() {
        return Err(Error::InternalDisagreement("universal retraction is not unique".into()));
    }
    Ok(first.map(|retraction| UniversalRetraction {
        retraction,
        triangles_checked: triangles,
    }))
}

/// Whether `g: C → D` carries the limit cone to a limit cone of `g ∘ D`.
pub fn preserves_limit_cone(wd: &WeightedDiagram, cone: &WeightedCone, g: &FunctorData) -> Result<bool> {
    let pushed = WeightedDiagram::new(wd.diagram.then(g)?, wd.weight.clone())?;
    let image = WeightedCone {
        tip: g.ob(cone.tip),
        legs: cone.legs.iter().map(|row| row.iter().map(|&l| g.mor(l)).collect()).collect(),
    };
    is_limit_cone(&pushed, &image)
}

/// Counts of an exhaustive preservation sweep.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PreservationSweep {
    pub functors: usize,
    pub failures: usize,
}

/// Pushes the cone through every functor from `C` into each target.
pub fn preservation_sweep(
    wd: &WeightedDiagram,
    cone: &WeightedCone,
    targets: &[Arc<FinCategory>],
) -> Result<PreservationSweep> {
    let mut sweep = PreservationSweep::default();
    for t in targets {
        for g in crate::functor::enumerate_functors(wd.category(), t)? {
            sweep.functors += 1;
            if !preserves_limit_cone(wd, cone, &g)? {
                sweep.failures += 1;
            }
        }
    }
    Ok(sweep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::category::validate_category;
    use crate::cones::find_representation;
    use crate::functor::{find_isomorphism, FunctorData};

    fn arc(c: FinCategory) -> Arc<FinCategory> {
        Arc::new(c)
    }

    #[test]
    fn splitting_examples() {
        let si = catalog::split_idem();
        let e = si.morphism("e").unwrap();
        let s = split_idempotent(&si, e).unwrap();
        assert_eq!(si.object_name(s.through), "s");
        assert_eq!((si.mor_name(s.section), si.mor_name(s.retraction)), ("i", "p"));
        let idem = catalog::idem();
        assert_eq!(split_idempotent(&idem, idem.morphism("e").unwrap()), None);
        let id = idem.morphism("id_x").unwrap();
        assert_eq!(split_idempotent(&idem, id).unwrap().section, id);
    }

    #[test]
    fn completeness_examples() {
        assert!(is_cauchy_complete(&catalog::split_idem()).complete);
        assert!(is_cauchy_complete(&catalog::one()).complete);
        let idem = catalog::idem();
        let r = is_cauchy_complete(&idem);
        assert!(!r.complete);
        assert_eq!(r.non_split.len(), 1);
        assert_eq!(idem.mor_name(r.non_split[0].morphism), "e");
    }

    #[test]
    fn invariant_functors_of_idem() {
        let idem = arc(catalog::idem());
        let e = idem.morphism("e").unwrap();
        assert_eq!(inv_r(&idem, e).set(Obj(0)).elements(), ["e"]);
        assert_eq!(inv_l(&idem, e).set(Obj(0)).elements(), ["e"]);
    }

    #[test]
    fn point_of_idem() {
        let idem = arc(catalog::idem());
        let pt = cauchy_point_from_idempotent(&idem, idem.morphism("e").unwrap()).unwrap();
        assert_eq!(pt.pairing().carrier.elements(), ["[x,e,e]"]);
        assert_eq!(pt.identity(), 0);
        let ext = cauchy_extension(&pt).unwrap();
        let c = ext.category();
        assert_eq!(c.num_morphisms(), 5);
        assert_eq!(c.hom(ext.extra(), ext.extra()).len(), 1);
        assert_eq!(validate_category(c), Ok(()));
        assert!(find_isomorphism(c, &arc(catalog::split_idem())).unwrap().is_some());
        assert_eq!(realize_cauchy_point(&pt).unwrap(), None);
    }

    #[test]
    fn identity_point_is_representable() {
        let idem = arc(catalog::idem());
        let id = idem.morphism("id_x").unwrap();
        let pt = cauchy_point_from_idempotent(&idem, id).unwrap();
        assert_eq!(pt.functor(), &hom_functor(&idem, Obj(0), Variance::Covariant));
        assert_eq!(pt.presheaf(), &hom_functor(&idem, Obj(0), Variance::Contravariant));
        assert_eq!(realize_cauchy_point(&pt).unwrap(), Some(Obj(0)));
        let one = arc(catalog::one());
        let pt = cauchy_point_from_idempotent(&one, one.id(Obj(0))).unwrap();
        let ext = cauchy_extension(&pt).unwrap();
        assert!(ext.inclusion().is_equivalence());
    }

    #[test]
    fn point_of_split_idempotent_is_realized() {
        let si = arc(catalog::split_idem());
        let pt = cauchy_point_from_idempotent(&si, si.morphism("e").unwrap()).unwrap();
        assert_eq!(realize_cauchy_point(&pt).unwrap(), Some(si.object("s").unwrap()));
        assert_eq!(find_representation(pt.presheaf()).unwrap().object, si.object("s").unwrap());
    }

    #[test]
    fn broken_identity_class_is_rejected() {
        let si = arc(catalog::split_idem());
        let e = si.morphism("e").unwrap();
        let x = si.object("x").unwrap();
        let f = inv_r(&si, e);
        let p = inv_l(&si, e);
        // Composition is natural, but [x, e, e] is no identity for the
        // full hom functors of x.
        let hf = hom_functor(&si, x, Variance::Covariant);
        let hp = hom_functor(&si, x, Variance::Contravariant);
        let ix = hf.set(x).index_of("e").unwrap();
        let px = hp.set(x).index_of("e").unwrap();
        let r = CauchyPoint::new(
            hf.clone(),
            hp.clone(),
            |a, q, b, g| si.comp(si.hom(x, b)[g], si.hom(a, x)[q]),
            (x, px, ix),
        );
        assert!(matches!(r, Err(Error::ValidationFailed(_))));
        let ok = CauchyPoint::new(hf, hp, |a, q, b, g| si.comp(si.hom(x, b)[g], si.hom(a, x)[q]), (x, px + 1, ix + 1));
        assert!(ok.is_ok());
        assert_eq!(f.set(x).elements(), ["e"]);
        assert_eq!(p.set(x).elements(), ["e"]);
    }

    #[test]
    fn retract_examples() {
        let idem = arc(catalog::idem());
        let e = idem.morphism("e").unwrap();
        let r = retract_of_representable(&inv_r(&idem, e)).unwrap().unwrap();
        assert_eq!(r.idempotent, e);
        let h = hom_functor(&idem, Obj(0), Variance::Covariant);
        let r = retract_of_representable(&h).unwrap().unwrap();
        assert_eq!(r.idempotent, idem.id(Obj(0)));
        assert!(r.section.is_isomorphism());
        assert_eq!(retract_of_representable(&SetFunctor::empty(idem.clone(), Variance::Covariant)).unwrap(), None);
        let one = arc(catalog::one());
        let two = SetFunctor::constant(one, Variance::Covariant, FinSet::new("2", ["a", "b"]).unwrap());
        assert!(!is_absolute_weight(&two).unwrap());
        assert!(is_absolute_weight(&inv_r(&idem, e)).unwrap());
    }

    #[test]
    fn karoubi_of_idem() {
        let idem = arc(catalog::idem());
        let k = karoubi_envelope(&idem).unwrap();
        let kc = k.category();
        assert_eq!(kc.object_names(), ["(x,e)", "(x,id_x)"]);
        let (xe, xid) = (Obj(0), Obj(1));
        assert_eq!(kc.hom(xid, xid).len(), 2);
        assert_eq!(kc.hom(xe, xe).len(), 1);
        assert_eq!(kc.hom(xe, xid).len(), 1);
        assert_eq!(kc.hom(xid, xe).len(), 1);
        assert_eq!(kc.mor_name(kc.id(xe)), "e:(x,e)->(x,e)");
        assert!(k.embedding().is_fully_faithful());
        assert!(is_cauchy_complete(kc).complete);
        let one = arc(catalog::one());
        let k1 = karoubi_envelope(&one).unwrap();
        assert!(find_isomorphism(k1.category(), &one).unwrap().is_some());
    }

    #[test]
    fn morphisms_between_points() {
        let idem = arc(catalog::idem());
        let e = idem.morphism("e").unwrap();
        let pt = cauchy_point_from_idempotent(&idem, e).unwrap();
        let id = cauchy_point_from_idempotent(&idem, idem.id(Obj(0))).unwrap();
        assert_eq!(cauchy_morphisms(&pt, &pt).unwrap().pairing.len(), 1);
        assert_eq!(cauchy_morphisms(&pt, &id).unwrap().pairing.len(), 1);
        assert_eq!(cauchy_morphisms(&id, &id).unwrap().pairing.len(), 2);
    }

    #[test]
    fn phi_on_small_categories() {
        for c in [catalog::one(), catalog::idem(), catalog::split_idem(), catalog::z2()] {
            let r = phi_equivalence_check(&arc(c)).unwrap();
            assert!(r.passes(), "{r:?}");
        }
        let r = phi_equivalence_check(&arc(catalog::idem())).unwrap();
        assert_eq!((r.objects, r.morphisms), (2, 5));
    }

    fn splitting_cone() -> (WeightedDiagram, WeightedCone) {
        let si = arc(catalog::split_idem());
        let pp = arc(catalog::par_pair());
        let d = FunctorData::from_names(
            pp.clone(),
            si.clone(),
            &[("0", "x"), ("1", "x")],
            &[("id_0", "id_x"), ("id_1", "id_x"), ("a", "e"), ("b", "id_x")],
        )
        .unwrap();
        let wd = WeightedDiagram::new(d, SetFunctor::terminal(pp, Variance::Covariant)).unwrap();
        let i = si.morphism("i").unwrap();
        let cone = WeightedCone {
            tip: si.object("s").unwrap(),
            legs: vec![vec![i], vec![i]],
        };
        (wd, cone)
    }

    #[test]
    fn splitting_cone_has_universal_retraction() {
        let (wd, cone) = splitting_cone();
        let c = wd.category().clone();
        assert!(is_limit_cone(&wd, &cone).unwrap());
        let u = universal_retraction(&wd, &cone).unwrap().unwrap();
        assert_eq!(c.mor_name(u.retraction.retraction), "p");
        assert_eq!(u.retraction.class, "[0,*,p]");
        assert!(u.triangles_checked > 0);
    }

    #[test]
    fn identity_cone_retracts_through_identity() {
        let one = arc(catalog::one());
        let idem = arc(catalog::idem());
        let d = FunctorData::pick_object(one.clone(), idem.clone(), Obj(0)).unwrap();
        let wd = WeightedDiagram::new(d, SetFunctor::terminal(one, Variance::Covariant)).unwrap();
        let cone = WeightedCone {
            tip: Obj(0),
            legs: vec![vec![idem.id(Obj(0))]],
        };
        let u = universal_retraction(&wd, &cone).unwrap().unwrap();
        assert_eq!(u.retraction.retraction, idem.id(Obj(0)));
    }

    #[test]
    fn binary_product_is_not_absolute() {
        let sets = arc(catalog::finite_sets(&[1, 2, 4]));
        let pair = arc(catalog::pair());
        let d = FunctorData::from_names(pair.clone(), sets.clone(), &[("0", "s2"), ("1", "s2")], &[
            ("id_0", "s2s2[01]"),
            ("id_1", "s2s2[01]"),
        ])
        .unwrap();
        let wd = WeightedDiagram::new(d, SetFunctor::terminal(pair, Variance::Covariant)).unwrap();
        let cone = WeightedCone {
            tip: sets.object("s4").unwrap(),
            legs: vec![
                vec![sets.morphism("s4s2[0011]").unwrap()],
                vec![sets.morphism("s4s2[0101]").unwrap()],
            ],
        };
        assert!(is_limit_cone(&wd, &cone).unwrap());
        assert!(eventual_retractions(&wd, &cone).unwrap().is_empty());
        assert_eq!(universal_retraction(&wd, &cone).unwrap(), None);
    }
}
