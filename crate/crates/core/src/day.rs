//! Strict monoidal structures on finite categories, Day convolution of set
//! functors and presheaves, and the strong monoidality of the Yoneda
//! embedding.

use std::sync::Arc;

use crate::category::{product, product_morphism, product_object, FinCategory, Mor, Obj};
use crate::ends::pairing;
use crate::error::{Error, Result};
use crate::set::{tuple_name, FinSet};
use crate::setfunctor::{hom_functor, hom_index, natural_iso_search, SetFunctor, Variance};

/// A strict monoidal structure `(C, ⊗, I)` given by tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictMonoidal {
    base: Arc<FinCategory>,
    tensor_obj: Vec<Obj>,
    tensor_mor: Vec<Mor>,
    unit: Obj,
}

impl StrictMonoidal {
    /// Checks that `⊗` is a functor `C × C → C` and that associativity and
    /// the unit laws hold strictly.
    pub fn new(
        base: Arc<FinCategory>,
        tensor_obj: impl Fn(Obj, Obj) -> Obj,
        tensor_mor: impl Fn(Mor, Mor) -> Mor,
        unit: Obj,
    ) -> Result<Self> {
        let c = &*base;
        let tobj = c.objects().flat_map(|a| c.objects().map(move |b| (a, b))).map(|(a, b)| tensor_obj(a, b)).collect();
        let tmor = c.morphisms().flat_map(|f| c.morphisms().map(move |g| (f, g))).map(|(f, g)| tensor_mor(f, g)).collect();
        let m = StrictMonoidal {
            base,
            tensor_obj: tobj,
            tensor_mor: tmor,
            unit,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    pub fn unit(&self) -> Obj {
        self.unit
    }

    pub fn tensor(&self, a: Obj, b: Obj) -> Obj {
        self.tensor_obj[a.0 * self.base.num_objects() + b.0]
    }

    pub fn tensor_mor(&self, f: Mor, g: Mor) -> Mor {
        self.tensor_mor[f.0 * self.base.num_morphisms() + g.0]
    }

    fn validate(&self) -> Result<()> {
        let c = &*self.base;
        let bad = |msg: String| Err(Error::InvalidMonoidal(msg));
        let (n, m) = (c.num_objects(), c.num_morphisms());
        if self.unit.0 >= n
            || self.tensor_obj.iter().any(|x| x.0 >= n)
            || self.tensor_mor.iter().any(|f| f.0 >= m)
        {
            return bad("table entry out of range".into());
        }
        for f in c.morphisms() {
            for g in c.morphisms() {
                let t = self.tensor_mor(f, g);
                if c.dom(t) != self.tensor(c.dom(f), c.dom(g)) || c.cod(t) != self.tensor(c.cod(f), c.cod(g)) {
                    return bad(format!("{} ⊗ {} has the wrong type", c.mor_name(f), c.mor_name(g)));
                }
            }
        }
        for a in c.objects() {
            for b in c.objects() {
                if self.tensor_mor(c.id(a), c.id(b)) != c.id(self.tensor(a, b)) {
                    return bad(format!("id ⊗ id is not an identity at ({}, {})", c.object_name(a), c.object_name(b)));
                }
                for d in c.objects() {
                    if self.tensor(self.tensor(a, b), d) != self.tensor(a, self.tensor(b, d)) {
                        return bad("tensor of objects is not strictly associative".into());
                    }
                }
            }
            if self.tensor(self.unit, a) != a || self.tensor(a, self.unit) != a {
                return bad(format!("unit law fails at `{}`", c.object_name(a)));
            }
        }
        let id_unit = c.id(self.unit);
        for f in c.morphisms() {
            if self.tensor_mor(id_unit, f) != f || self.tensor_mor(f, id_unit) != f {
                return bad(format!("unit law fails at `{}`", c.mor_name(f)));
            }
            for g in c.morphisms() {
                for &f2 in c.outgoing(c.cod(f)) {
                    for &g2 in c.outgoing(c.cod(g)) {
                        let lhs = self.tensor_mor(c.comp(f2, f), c.comp(g2, g));
                        let rhs = c.comp(self.tensor_mor(f2, g2), self.tensor_mor(f, g));
                        if lhs != rhs {
                            return bad("tensor does not preserve composition".into());
                        }
                    }
                }
                for h in c.morphisms() {
                    if self.tensor_mor(self.tensor_mor(f, g), h) != self.tensor_mor(f, self.tensor_mor(g, h)) {
                        return bad("tensor of morphisms is not strictly associative".into());
                    }
                }
            }
        }
        Ok(())
    }

    /// The trivial structure on `One`.
    pub fn one() -> Self {
        let c = Arc::new(crate::catalog::one());
        StrictMonoidal::new(c, |_, _| Obj(0), |f, _| f, Obj(0)).expect("valid")
    }

    /// `Z/n` as a discrete monoidal category on objects `0..n`, with the
    /// objects of `Z2disc` named `I, A`.
    fn discrete_group(c: FinCategory, order: impl Fn(Obj) -> usize) -> Self {
        let c = Arc::new(c);
        let n = c.num_objects();
        let of = c.objects().map(&order).collect::<Vec<_>>();
        let mut back = vec![Obj(0); n];
        for x in c.objects() {
            back[of[x.0]] = x;
        }
        let unit = back[0];
        let cc = c.clone();
        let (back2, of2) = (back.clone(), of.clone());
        StrictMonoidal::new(
            c,
            |a, b| back[(of[a.0] + of[b.0]) % n],
            move |f, g| cc.id(back2[(of2[cc.dom(f).0] + of2[cc.dom(g).0]) % n]),
            unit,
        )
        .expect("valid")
    }

    /// `Z2disc`: discrete on `{I, A}` with `A ⊗ A = I`.
    pub fn z2disc() -> Self {
        let c = crate::catalog::z2disc();
        let a = c.object("A").unwrap();
        StrictMonoidal::discrete_group(c, move |x| usize::from(x == a))
    }

    /// `Z3disc`: discrete on `{0, 1, 2}` with addition mod 3.
    pub fn z3disc() -> Self {
        let c = crate::catalog::z3disc();
        let names: Vec<usize> = c.object_names().iter().map(|s| s.parse().unwrap()).collect();
        StrictMonoidal::discrete_group(c, move |x| names[x.0])
    }

    /// The poset `0 ≤ 1` with `⊗ = max` and unit `0`.
    pub fn poset01_max() -> Self {
        let c = Arc::new(crate::catalog::poset01());
        let cc = c.clone();
        let hom = move |a: Obj, b: Obj| cc.hom(a, b)[0];
        let cc = c.clone();
        StrictMonoidal::new(
            c,
            |a, b| a.max(b),
            move |f, g| hom(cc.dom(f).max(cc.dom(g)), cc.cod(f).max(cc.cod(g))),
            Obj(0),
        )
        .expect("valid")
    }
}

type Action<'a> = Box<dyn Fn(Mor, usize) -> usize + 'a>;

/// Day convolution `F ⊗ G`.
///
/// For covariant functors `(F ⊗ G)(Z) = ∫^{X,Y} C(X⊗Y, Z) × F X × G Y`; for
/// presheaves `(P ⊗ Q)(Z) = ∫^{X,Y} C(Z, X⊗Y) × P X × Q Y`. The coend runs
/// over `C × C`. Classes are named `[(X,Y),h,(x,y)]`.
pub fn day_convolve(f: &SetFunctor, g: &SetFunctor, m: &StrictMonoidal) -> Result<SetFunctor> {
    let c = m.base();
    if **f.base() != **c || **g.base() != **c {
        return Err(Error::BaseMismatch);
    }
    if f.variance() != g.variance() {
        return Err(Error::VarianceMismatch);
    }
    let variance = f.variance();
    let prod = Arc::new(product(c, c)?);
    let mut pair_of = vec![(Obj(0), Obj(0)); prod.num_objects()];
    for x in c.objects() {
        for y in c.objects() {
            pair_of[product_object(&prod, c, x, c, y).0] = (x, y);
        }
    }
    let mut mor_of = vec![(Mor(0), Mor(0)); prod.num_morphisms()];
    for a in c.morphisms() {
        for b in c.morphisms() {
            mor_of[product_morphism(&prod, c, a, c, b).0] = (a, b);
        }
    }
    // F X × G Y on C × C, with pair (u, v) at position u·|G Y| + v.
    let elements: Vec<Vec<String>> = prod
        .objects()
        .map(|o| {
            let (x, y) = pair_of[o.0];
            let mut names = Vec::new();
            for u in f.set(x).elements() {
                for v in g.set(y).elements() {
                    names.push(tuple_name(&[u, v]));
                }
            }
            names
        })
        .collect();
    let (outer, _) = SetFunctor::from_unsorted(prod.clone(), variance, elements, |h, i| {
        let (a, b) = mor_of[h.0];
        let (src, dst) = match variance {
            Variance::Covariant => ((c.dom(a), c.dom(b)), (c.cod(a), c.cod(b))),
            Variance::Contravariant => ((c.cod(a), c.cod(b)), (c.dom(a), c.dom(b))),
        };
        let w = g.set(src.1).len();
        let (u, v) = (i / w, i % w);
        f.act(a, u) * g.set(dst.1).len() + g.act(b, v)
    })?;
    let (pair_of, mor_of) = (&pair_of, &mor_of);
    let tensor_of = |o: Obj| {
        let (x, y) = pair_of[o.0];
        m.tensor(x, y)
    };
    // One coend per object Z.
    let hom_at = |z: Obj| -> Result<SetFunctor> {
        let (sets, act): (Vec<FinSet>, Action) = match variance {
            Variance::Covariant => (
                prod.objects().map(|o| hom_set(c, tensor_of(o), z)).collect(),
                Box::new(move |h: Mor, k: usize| {
                    let (a, b) = mor_of[h.0];
                    let t = m.tensor_mor(a, b);
                    let src = c.hom(c.cod(t), z)[k];
                    hom_index(c, c.comp(src, t))
                }),
            ),
            Variance::Contravariant => (
                prod.objects().map(|o| hom_set(c, z, tensor_of(o))).collect(),
                Box::new(move |h: Mor, k: usize| {
                    let (a, b) = mor_of[h.0];
                    let t = m.tensor_mor(a, b);
                    let src = c.hom(z, c.dom(t))[k];
                    hom_index(c, c.comp(t, src))
                }),
            ),
        };
        SetFunctor::from_fn(prod.clone(), variance.flip(), sets, act)
    };
    let mut coends = Vec::with_capacity(c.num_objects());
    for z in c.objects() {
        let h = hom_at(z)?;
        coends.push(match variance {
            Variance::Covariant => pairing(&h, &outer)?,
            Variance::Contravariant => pairing(&outer, &h)?,
        });
    }
    let mut consistent = true;
    let mut tables = Vec::with_capacity(c.num_morphisms());
    for k in c.morphisms() {
        let (src, dst) = match variance {
            Variance::Covariant => (c.dom(k), c.cod(k)),
            Variance::Contravariant => (c.cod(k), c.dom(k)),
        };
        let target = &coends[dst.0];
        let row: Vec<usize> = coends[src.0]
            .members
            .iter()
            .map(|members| {
                let images: Vec<usize> = members
                    .iter()
                    .map(|&(o, p, q)| match variance {
                        Variance::Covariant => {
                            let moved = c.comp(k, c.hom(tensor_of(o), src)[p]);
                            target.class(o, hom_index(c, moved), q)
                        }
                        Variance::Contravariant => {
                            let moved = c.comp(c.hom(src, tensor_of(o))[q], k);
                            target.class(o, p, hom_index(c, moved))
                        }
                    })
                    .collect();
                consistent &= images.iter().all(|&v| v == images[0]);
                images[0]
            })
            .collect();
        tables.push(row);
    }
    if !consistent {
        return Err(Error::InternalDisagreement("Day convolution action depends on the representative".into()));
    }
    let sets = c
        .objects()
        .map(|z| FinSet::from_sorted(c.object_name(z), coends[z.0].carrier.elements().to_vec()))
        .collect();
    SetFunctor::from_fn(c.clone(), variance, sets, |k, i| tables[k.0][i])
}

fn hom_set(c: &FinCategory, a: Obj, b: Obj) -> FinSet {
    FinSet::from_sorted("", c.hom(a, b).iter().map(|&f| c.mor_name(f).to_string()).collect())
}

/// One isomorphism search in [`check_yoneda_strong_monoidal`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DayCheck {
    pub variance: Variance,
    /// The objects involved: a pair for `Y(A) ⊗ Y(B) ≅ Y(A⊗B)` and for the
    /// unit laws, a triple for associativity.
    pub objects: Vec<Obj>,
    pub kind: DayCheckKind,
    pub found: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DayCheckKind {
    Tensor,
    LeftUnit,
    RightUnit,
    Associativity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DayReport {
    pub checks: Vec<DayCheck>,
}

impl DayReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.found)
    }
}

/// For both variances: `Y(A) ⊗ Y(B) ≅ Y(A⊗B)` for all pairs, `Y(I)` a unit
/// on both sides of every `Y(A)`, and associativity of `⊗` on all triples
/// of representables. Each claim is certified by an isomorphism found by
/// search.
pub fn check_yoneda_strong_monoidal(m: &StrictMonoidal) -> Result<DayReport> {
    let c = m.base();
    let mut checks = Vec::new();
    for variance in [Variance::Covariant, Variance::Contravariant] {
        let yon: Vec<SetFunctor> = c.objects().map(|a| hom_functor(c, a, variance)).collect();
        let mut products = vec![None; c.num_objects() * c.num_objects()];
        for a in c.objects() {
            for b in c.objects() {
                let t = day_convolve(&yon[a.0], &yon[b.0], m)?;
                let found = natural_iso_search(&t, &yon[m.tensor(a, b).0])?.is_some();
                checks.push(DayCheck {
                    variance,
                    objects: vec![a, b],
                    kind: DayCheckKind::Tensor,
                    found,
                });
                products[a.0 * c.num_objects() + b.0] = Some(t);
            }
        }
        let i = m.unit();
        for a in c.objects() {
            let left = day_convolve(&yon[i.0], &yon[a.0], m)?;
            let right = day_convolve(&yon[a.0], &yon[i.0], m)?;
            for (kind, t) in [(DayCheckKind::LeftUnit, left), (DayCheckKind::RightUnit, right)] {
                let found = natural_iso_search(&t, &yon[a.0])?.is_some();
                checks.push(DayCheck {
                    variance,
                    objects: vec![a],
                    kind,
                    found,
                });
            }
        }
        let n = c.num_objects();
        for a in c.objects() {
            for b in c.objects() {
                for d in c.objects() {
                    let ab = products[a.0 * n + b.0].as_ref().expect("computed above");
                    let bd = products[b.0 * n + d.0].as_ref().expect("computed above");
                    let lhs = day_convolve(ab, &yon[d.0], m)?;
                    let rhs = day_convolve(&yon[a.0], bd, m)?;
                    let found = natural_iso_search(&lhs, &rhs)?.is_some();
                    checks.push(DayCheck {
                        variance,
                        objects: vec![a, b, d],
                        kind: DayCheckKind::Associativity,
                        found,
                    });
                }
            }
        }
    }
    Ok(DayReport { checks })
}
