//! Collages and composition of profunctors, with the unit and associativity
//! isomorphisms built explicitly.

use std::sync::Arc;

use crate::cap::check_size;
use crate::category::{CategoryBuilder, FinCategory, Mor, Obj};
use crate::ends::{pairing, PairingResult, Profunctor};
use crate::error::{Error, Result};
use crate::functor::FunctorData;
use crate::set::{FinFunction, FinSet};
use crate::setfunctor::{natural_iso_search, NatTransformation, SetFunctor, Variance};

/// The collage of `Φ: C ⇸ D`: `C` and `D` side by side with the elements of
/// `Φ̄(d, c)` as extra arrows `d → c`, and no arrows from `C` to `D`.
///
/// Objects and morphisms of `C` are prefixed `src:`, those of `D` `tgt:`,
/// and heteromorphisms are named `het:<d>:<c>:<element>`.
#[derive(Debug, Clone)]
pub struct Collage {
    pub category: Arc<FinCategory>,
    /// `C → collage`.
    pub source_inclusion: FunctorData,
    /// `D → collage`.
    pub target_inclusion: FunctorData,
    heteromorphisms: Vec<Vec<Vec<Mor>>>,
}

impl Collage {
    /// The arrow `d → c` for element `x` of `Φ̄(d, c)`.
    pub fn heteromorphism(&self, d: Obj, c: Obj, x: usize) -> Mor {
        self.heteromorphisms[d.0][c.0][x]
    }
}

#[derive(Debug, Clone, Copy)]
enum Piece {
    Source(Mor),
    Target(Mor),
    Het(Obj, Obj, usize),
}

pub fn collage(phi: &Profunctor) -> Result<Collage> {
    let (c, d) = (phi.source(), phi.target());
    let hets: usize = d
        .objects()
        .flat_map(|y| c.objects().map(move |x| (y, x)))
        .map(|(y, x)| phi.set(y, x).len())
        .sum();
    check_size((c.num_morphisms() + d.num_morphisms() + hets) as u128)?;
    let mut b = CategoryBuilder::new(format!("collage({}⇸{})", c.name(), d.name()));
    let src_obj: Vec<usize> = c.objects().map(|x| b.object(format!("src:{}", c.object_name(x)))).collect();
    let tgt_obj: Vec<usize> = d.objects().map(|y| b.object(format!("tgt:{}", d.object_name(y)))).collect();
    let mut pieces = Vec::new();
    let src_mor: Vec<usize> = c
        .morphisms()
        .map(|f| {
            pieces.push(Piece::Source(f));
            b.morphism(format!("src:{}", c.mor_name(f)), src_obj[c.dom(f).0], src_obj[c.cod(f).0])
        })
        .collect();
    let tgt_mor: Vec<usize> = d
        .morphisms()
        .map(|h| {
            pieces.push(Piece::Target(h));
            b.morphism(format!("tgt:{}", d.mor_name(h)), tgt_obj[d.dom(h).0], tgt_obj[d.cod(h).0])
        })
        .collect();
    for x in c.objects() {
        b.set_identity(src_obj[x.0], src_mor[c.id(x).0]);
    }
    for y in d.objects() {
        b.set_identity(tgt_obj[y.0], tgt_mor[d.id(y).0]);
    }
    let het_names = |y: Obj, x: Obj, u: usize| {
        format!("het:{}:{}:{}", d.object_name(y), c.object_name(x), phi.set(y, x).element(u))
    };
    let het_idx: Vec<Vec<Vec<usize>>> = d
        .objects()
        .map(|y| {
            c.objects()
                .map(|x| {
                    (0..phi.set(y, x).len())
                        .map(|u| {
                            pieces.push(Piece::Het(y, x, u));
                            b.morphism(het_names(y, x, u), tgt_obj[y.0], src_obj[x.0])
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    b.compose_all(|g, f| match (pieces[g], pieces[f]) {
        (Piece::Source(g), Piece::Source(f)) => src_mor[c.comp(g, f).0],
        (Piece::Target(g), Piece::Target(f)) => tgt_mor[d.comp(g, f).0],
        (Piece::Source(g), Piece::Het(y, _, u)) => het_idx[y.0][c.cod(g).0][phi.right(y, g, u)],
        (Piece::Het(_, x, u), Piece::Target(h)) => het_idx[d.dom(h).0][x.0][phi.left(h, x, u)],
        _ => unreachable!("composable pairs have matching types"),
    });
    let category = Arc::new(b.finish()?);
    let find = |name: String| category.morphism(&name).expect("name was registered");
    let source_inclusion = FunctorData::new(
        c.clone(),
        category.clone(),
        c.objects().map(|x| category.object(&format!("src:{}", c.object_name(x))).unwrap()).collect(),
        c.morphisms().map(|f| find(format!("src:{}", c.mor_name(f)))).collect(),
    )?;
    let target_inclusion = FunctorData::new(
        d.clone(),
        category.clone(),
        d.objects().map(|y| category.object(&format!("tgt:{}", d.object_name(y))).unwrap()).collect(),
        d.morphisms().map(|h| find(format!("tgt:{}", d.mor_name(h)))).collect(),
    )?;
    let heteromorphisms = d
        .objects()
        .map(|y| {
            c.objects()
                .map(|x| (0..phi.set(y, x).len()).map(|u| find(het_names(y, x, u))).collect())
                .collect()
        })
        .collect();
    Ok(Collage {
        category,
        source_inclusion,
        target_inclusion,
        heteromorphisms,
    })
}

/// `Ψ ∘ Φ: C ⇸ E` together with the pairing behind each of its values.
#[derive(Debug, Clone)]
pub struct Composite {
    pub profunctor: Profunctor,
    /// `classes[e · |C| + c] = ∫^d Φ̄(d, c) × Ψ̄(e, d)`, classes `[d,x,y]`.
    pub classes: Vec<PairingResult>,
}

impl Composite {
    pub fn pairing_at(&self, e: Obj, c: Obj) -> &PairingResult {
        &self.classes[e.0 * self.profunctor.source().num_objects() + c.0]
    }
}

/// `Ψ ∘ Φ` for `Φ: C ⇸ D` and `Ψ: D ⇸ E`.
pub fn compose_profunctors(phi: &Profunctor, psi: &Profunctor) -> Result<Profunctor> {
    Ok(compose_with_classes(phi, psi)?.profunctor)
}

/// `Ψ ∘ Φ`, keeping the classes. Actions are computed on every member of
/// a class and required to agree.
pub fn compose_with_classes(phi: &Profunctor, psi: &Profunctor) -> Result<Composite> {
    if **phi.target() != **psi.source() {
        return Err(Error::BaseMismatch);
    }
    let (c, d, e) = (phi.source().clone(), phi.target().clone(), psi.target().clone());
    let mut classes = Vec::with_capacity(e.num_objects() * c.num_objects());
    for z in e.objects() {
        let right = SetFunctor::from_fn(d.clone(), Variance::Covariant, d.objects().map(|y| psi.set(z, y).clone()).collect(), |h, u| {
            psi.right(z, h, u)
        })?;
        for x in c.objects() {
            let left = SetFunctor::from_fn(
                d.clone(),
                Variance::Contravariant,
                d.objects().map(|y| phi.set(y, x).clone()).collect(),
                |h, u| phi.left(h, x, u),
            )?;
            classes.push(pairing(&left, &right)?);
        }
    }
    let nc = c.num_objects();
    let at = |z: Obj, x: Obj| &classes[z.0 * nc + x.0];
    let mut consistent = true;
    let mut check = |values: Vec<usize>| -> usize {
        consistent &= values.iter().all(|&v| v == values[0]);
        values[0]
    };
    let mut left_tables = vec![Vec::new(); e.num_morphisms() * nc];
    for k in e.morphisms() {
        let (z2, z1) = (e.dom(k), e.cod(k));
        for x in c.objects() {
            let target = at(z2, x);
            left_tables[k.0 * nc + x.0] = at(z1, x)
                .members
                .iter()
                .map(|m| check(m.iter().map(|&(y, u, v)| target.class(y, u, psi.left(k, y, v))).collect()))
                .collect();
        }
    }
    let ne = e.num_objects();
    let mut right_tables = vec![Vec::new(); ne * c.num_morphisms()];
    for f in c.morphisms() {
        let (x1, x2) = (c.dom(f), c.cod(f));
        for z in e.objects() {
            let target = at(z, x2);
            right_tables[z.0 * c.num_morphisms() + f.0] = at(z, x1)
                .members
                .iter()
                .map(|m| check(m.iter().map(|&(y, u, v)| target.class(y, phi.right(y, f, u), v)).collect()))
                .collect();
        }
    }
    if !consistent {
        return Err(Error::InternalDisagreement("composite action depends on the representative".into()));
    }
    let mc = c.num_morphisms();
    let profunctor = Profunctor::from_fn(
        c.clone(),
        e.clone(),
        |z, x| FinSet::from_sorted("", at(z, x).carrier.elements().to_vec()),
        |k, x, u| left_tables[k.0 * nc + x.0][u],
        |z, f, u| right_tables[z.0 * mc + f.0][u],
    )?;
    Ok(Composite { profunctor, classes })
}

/// The profunctor with empty values.
pub fn empty_profunctor(source: Arc<FinCategory>, target: Arc<FinCategory>) -> Profunctor {
    Profunctor::from_fn(source, target, |_, _| FinSet::empty(""), |_, _, x| x, |_, _, x| x)
        .expect("the empty profunctor is functorial")
}

fn checked_iso(s: &SetFunctor, t: &SetFunctor, components: Vec<FinFunction>) -> Result<NatTransformation> {
    let alpha = NatTransformation { components };
    alpha.check(s, t)?;
    if !alpha.is_isomorphism() {
        return Err(Error::InternalDisagreement("canonical map is not bijective".into()));
    }
    Ok(alpha)
}

fn component_tables(
    p: &Profunctor,
    target: &Profunctor,
    mut value: impl FnMut(Obj, Obj, usize) -> usize,
) -> Vec<FinFunction> {
    let (c, d) = (p.source(), p.target());
    let base = p.functor().base();
    let mut comps = vec![FinFunction::identity(0); base.num_objects()];
    for y in d.objects() {
        for x in c.objects() {
            let map = (0..p.set(y, x).len()).map(|u| value(y, x, u)).collect();
            comps[p.object(y, x).0] = FinFunction::new(map, target.set(y, x).len()).expect("values in range");
        }
    }
    comps
}

/// `Φ ∘ C(−, −) ≅ Φ`, sending `[c', g, x]` to `Φ̄(d, g)(x)`.
pub fn unitor_source(phi: &Profunctor) -> Result<NatTransformation> {
    let comp = compose_with_classes(&Profunctor::hom(phi.source()), phi)?;
    let c = phi.source();
    let comps = component_tables(&comp.profunctor, phi, |y, x, k| {
        let (x1, g, u) = comp.pairing_at(y, x).representative(k);
        phi.right(y, c.hom(x1, x)[g], u)
    });
    checked_iso(comp.profunctor.functor(), phi.functor(), comps)
}

/// `D(−, −) ∘ Φ ≅ Φ`, sending `[d', x, h]` to `Φ̄(h, c)(x)`.
pub fn unitor_target(phi: &Profunctor) -> Result<NatTransformation> {
    let comp = compose_with_classes(phi, &Profunctor::hom(phi.target()))?;
    let d = phi.target();
    let comps = component_tables(&comp.profunctor, phi, |y, x, k| {
        let (y1, u, h) = comp.pairing_at(y, x).representative(k);
        phi.left(d.hom(y, y1)[h], x, u)
    });
    checked_iso(comp.profunctor.functor(), phi.functor(), comps)
}

/// `Θ ∘ (Ψ ∘ Φ) ≅ (Θ ∘ Ψ) ∘ Φ`, sending `[e, [d, x, y], z]` to
/// `[d, x, [e, y, z]]`.
pub fn associator(phi: &Profunctor, psi: &Profunctor, theta: &Profunctor) -> Result<NatTransformation> {
    let psi_phi = compose_with_classes(phi, psi)?;
    let theta_psi = compose_with_classes(psi, theta)?;
    let left = compose_with_classes(&psi_phi.profunctor, theta)?;
    let right = compose_with_classes(phi, &theta_psi.profunctor)?;
    let comps = component_tables(&left.profunctor, &right.profunctor, |w, x, k| {
        let (z, u, t) = left.pairing_at(w, x).representative(k);
        let (y, a, b) = psi_phi.pairing_at(z, x).representative(u);
        let inner = theta_psi.pairing_at(w, y).class(z, b, t);
        right.pairing_at(w, x).class(y, a, inner)
    });
    checked_iso(left.profunctor.functor(), right.profunctor.functor(), comps)
}

/// A natural isomorphism between profunctors with the same source and
/// target, found by search.
pub fn profunctor_iso(a: &Profunctor, b: &Profunctor) -> Result<Option<NatTransformation>> {
    if **a.source() != **b.source() || **a.target() != **b.target() {
        return Err(Error::BaseMismatch);
    }
    natural_iso_search(a.functor(), b.functor())
}
