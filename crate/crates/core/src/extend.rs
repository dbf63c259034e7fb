//! Extension of a category by one extra object whose arrows to or from the
//! base are the elements of a set functor or presheaf ("virtual arrows").

use std::sync::Arc;

use crate::category::{CategoryBuilder, FinCategory, Mor, Obj};
use crate::error::{Error, Result};
use crate::functor::FunctorData;
use crate::setfunctor::{SetFunctor, Variance};

/// Default name of the extra object.
pub const EXTRA: &str = "__E";

/// `C` extended by an extra object `E`: `hom(E, A) = S(A)` for a covariant
/// `S`, `hom(A, E) = S(A)` for a contravariant one.
///
/// Virtual arrows are named `__v:<A>:<element>`; the object is part of the
/// name because the same element name may occur at several objects.
#[derive(Debug, Clone)]
pub struct Extension {
    category: Arc<FinCategory>,
    base: Arc<FinCategory>,
    extra: Obj,
    variance: Variance,
    objects: Vec<Obj>,
    morphisms: Vec<Mor>,
    virtuals: Vec<Vec<Mor>>,
}

impl Extension {
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

    pub fn variance(&self) -> Variance {
        self.variance
    }

    /// Image of a base object.
    pub fn object(&self, x: Obj) -> Obj {
        self.objects[x.0]
    }

    /// Image of a base morphism.
    pub fn morphism(&self, f: Mor) -> Mor {
        self.morphisms[f.0]
    }

    /// The virtual arrow for element `u` of `S(x)`.
    pub fn virtual_arrow(&self, x: Obj, u: usize) -> Mor {
        self.virtuals[x.0][u]
    }

    pub fn is_virtual(&self, f: Mor) -> bool {
        let c = &self.category;
        (c.dom(f) == self.extra) != (c.cod(f) == self.extra)
    }

    /// The inclusion `C → C^{+S}`, which is fully faithful.
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

/// `C^{+S}` with the extra object named [`EXTRA`].
pub fn extend(c: &Arc<FinCategory>, s: &SetFunctor) -> Result<Extension> {
    extend_with_label(c, s, EXTRA)
}

/// `C^{+S}` with the extra object named `label`.
pub fn extend_with_label(c: &Arc<FinCategory>, s: &SetFunctor, label: &str) -> Result<Extension> {
    if **s.base() != **c {
        return Err(Error::BaseMismatch);
    }
    let variance = s.variance();
    let mut b = CategoryBuilder::new(format!("{}+{}", c.name(), label));
    for x in c.objects() {
        b.object(c.object_name(x));
    }
    let e = b.object(label);
    for f in c.morphisms() {
        b.morphism(c.mor_name(f), c.dom(f).0, c.cod(f).0);
    }
    for x in c.objects() {
        b.set_identity(x.0, c.id(x).0);
    }
    let id_e = b.identity(format!("id_{label}"), e);
    let mut virtuals = Vec::new();
    let mut owner = Vec::new();
    for x in c.objects() {
        let mut row = Vec::new();
        for (u, name) in s.set(x).elements().iter().enumerate() {
            let nm = format!("__v:{}:{}", c.object_name(x), name);
            let m = match variance {
                Variance::Covariant => b.morphism(nm, e, x.0),
                Variance::Contravariant => b.morphism(nm, x.0, e),
            };
            row.push(m);
            owner.push((x, u));
        }
        virtuals.push(row);
    }
    let m0 = c.num_morphisms();
    let first_virtual = m0 + 1;
    b.compose_all(|g, f| {
        if g < m0 && f < m0 {
            return c.comp(Mor(g), Mor(f)).0;
        }
        if g == id_e {
            return f;
        }
        if f == id_e {
            return g;
        }
        match variance {
            // g is a base morphism after the virtual arrow f.
            Variance::Covariant => {
                let (_, u) = owner[f - first_virtual];
                let y = c.cod(Mor(g));
                virtuals[y.0][s.act(Mor(g), u)]
            }
            // the virtual arrow g after the base morphism f.
            Variance::Contravariant => {
                let (_, u) = owner[g - first_virtual];
                let y = c.dom(Mor(f));
                virtuals[y.0][s.act(Mor(f), u)]
            }
        }
    });
    let category = Arc::new(b.finish()?);
    let objects: Vec<Obj> = c.objects().map(|x| category.object(c.object_name(x)).unwrap()).collect();
    let morphisms: Vec<Mor> = c.morphisms().map(|f| category.morphism(c.mor_name(f)).unwrap()).collect();
    let virtuals = c
        .objects()
        .map(|x| {
            s.set(x)
                .elements()
                .iter()
                .map(|u| category.morphism(&format!("__v:{}:{}", c.object_name(x), u)).unwrap())
                .collect()
        })
        .collect();
    let extra = category.object(label)?;
    Ok(Extension {
        category,
        base: c.clone(),
        extra,
        variance,
        objects,
        morphisms,
        virtuals,
    })
}
