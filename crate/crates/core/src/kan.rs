//! Pointwise Kan extensions computed as weighted limits and colimits.

use std::sync::Arc;

use crate::category::{FinCategory, Mor, Obj};
use crate::cones::{weighted_limit_in_c, WeightedCone, WeightedDiagram};
use crate::error::{Error, Result};
use crate::functor::{enumerate_transformations, FunctorData, FunctorNat};
use crate::set::FinSet;
use crate::setfunctor::{hom_index, SetFunctor, Variance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

/// A pointwise Kan extension of `D: J → C` along `G: J → K`, possibly
/// partial.
#[derive(Debug, Clone)]
pub struct KanResult {
    pub side: Side,
    /// The value at each object of `K`, where the weighted (co)limit exists.
    pub objects: Vec<Option<Obj>>,
    /// The universal (co)cone at each object of `K`, with legs indexed by
    /// `(J, f)` for `f` in `K(k, G J)` (right) or `K(G J, k)` (left).
    pub cones: Vec<Option<WeightedCone>>,
    /// The assembled functor `K → C` when every value exists.
    pub extension: Option<FunctorData>,
    /// `ρ_J: R(G J) → D(J)` (right) or `λ_J: D(J) → L(G J)` (left), where
    /// the value at `G J` exists.
    pub unit: Vec<Option<Mor>>,
    /// Objects of `K` without a value.
    pub missing: Vec<Obj>,
    diagram: FunctorData,
    along: FunctorData,
}

impl KanResult {
    pub fn is_total(&self) -> bool {
        self.missing.is_empty()
    }

    pub fn diagram(&self) -> &FunctorData {
        &self.diagram
    }

    pub fn along(&self) -> &FunctorData {
        &self.along
    }

    /// The unit as a transformation `R G ⇒ D` (or `D ⇒ L G`), if total.
    pub fn unit_transformation(&self) -> Option<FunctorNat> {
        let components = self.unit.iter().copied().collect::<Option<Vec<_>>>()?;
        Some(FunctorNat { components })
    }

    /// The same extension seen in the opposite categories, with sides
    /// exchanged.
    fn dual(&self) -> KanResult {
        KanResult {
            side: match self.side {
                Side::Right => Side::Left,
                Side::Left => Side::Right,
            },
            objects: self.objects.clone(),
            cones: self.cones.clone(),
            extension: self.extension.as_ref().map(FunctorData::opposite),
            unit: self.unit.clone(),
            missing: self.missing.clone(),
            diagram: self.diagram.opposite(),
            along: self.along.opposite(),
        }
    }
}

fn check_shapes(d: &FunctorData, g: &FunctorData) -> Result<()> {
    if **d.source() != **g.source() {
        return Err(Error::BaseMismatch);
    }
    Ok(())
}

/// The weight `K(k, G−)` on `J`.
fn hom_weight(g: &FunctorData, k: Obj) -> Result<SetFunctor> {
    let (j, kc) = (g.source(), g.target());
    let sets = j
        .objects()
        .map(|x| {
            let names = kc.hom(k, g.ob(x)).iter().map(|&f| kc.mor_name(f).to_string()).collect();
            FinSet::from_sorted(j.object_name(x), names)
        })
        .collect();
    SetFunctor::from_fn(j.clone(), Variance::Covariant, sets, |h, i| {
        let f = kc.hom(k, g.ob(j.dom(h)))[i];
        hom_index(kc, kc.comp(g.mor(h), f))
    })
}

/// The unique `m` with `cone ∘ m = other`, if there is exactly one.
fn mediator(c: &FinCategory, universal: &WeightedCone, other: &WeightedCone) -> Option<Mor> {
    let mut found = c.hom(other.tip, universal.tip).iter().filter(|&&m| universal.along(c, m, true) == *other);
    let m = *found.next()?;
    found.next().is_none().then_some(m)
}

/// `Ran_G D(k) = {K(k, G−), D}`, computed at every `k` of `K`.
pub fn right_kan_pointwise(d: &FunctorData, g: &FunctorData) -> Result<KanResult> {
    check_shapes(d, g)?;
    let (j, c, kc) = (d.source(), d.target(), g.target());
    let mut objects = Vec::new();
    let mut cones = Vec::new();
    let mut missing = Vec::new();
    for k in kc.objects() {
        let wd = WeightedDiagram::new(d.clone(), hom_weight(g, k)?)?;
        match weighted_limit_in_c(&wd)? {
            Some(l) => {
                objects.push(Some(l.object));
                cones.push(Some(l.cone));
            }
            None => {
                objects.push(None);
                cones.push(None);
                missing.push(k);
            }
        }
    }
    // ρ_J is the leg at (J, id_{G J}).
    let unit = j
        .objects()
        .map(|x| {
            let gx = g.ob(x);
            cones[gx.0].as_ref().map(|cone| cone.legs[x.0][hom_index(kc, kc.id(gx))])
        })
        .collect();
    let extension = if missing.is_empty() {
        let obj_map: Vec<Obj> = objects.iter().map(|o| o.unwrap()).collect();
        let mut mor_map = Vec::with_capacity(kc.num_morphisms());
        for h in kc.morphisms() {
            let (k, k2) = (kc.dom(h), kc.cod(h));
            let (from, to) = (cones[k.0].as_ref().unwrap(), cones[k2.0].as_ref().unwrap());
            // The cone over K(k2, G−) obtained by restricting along h.
            let induced = WeightedCone {
                tip: from.tip,
                legs: j
                    .objects()
                    .map(|x| {
                        kc.hom(k2, g.ob(x))
                            .iter()
                            .map(|&f| from.legs[x.0][hom_index(kc, kc.comp(f, h))])
                            .collect()
                    })
                    .collect(),
            };
            let m = mediator(c, to, &induced)
                .ok_or_else(|| Error::InternalDisagreement(format!("no mediator for `{}`", kc.mor_name(h))))?;
            mor_map.push(m);
        }
        Some(FunctorData::new(kc.clone(), c.clone(), obj_map, mor_map)?)
    } else {
        None
    };
    Ok(KanResult {
        side: Side::Right,
        objects,
        cones,
        extension,
        unit,
        missing,
        diagram: d.clone(),
        along: g.clone(),
    })
}

/// `Lan_G D(k) = K(G−, k) ⋆ D`, computed in the opposite categories.
pub fn left_kan_pointwise(d: &FunctorData, g: &FunctorData) -> Result<KanResult> {
    check_shapes(d, g)?;
    let r = right_kan_pointwise(&d.opposite(), &g.opposite())?;
    let mut l = r.dual();
    // Restore the original categories rather than double opposites.
    l.diagram = d.clone();
    l.along = g.clone();
    if let Some(e) = &l.extension {
        l.extension = Some(FunctorData::new(
            g.target().clone(),
            d.target().clone(),
            e.object_map().to_vec(),
            e.morphism_map().to_vec(),
        )?);
    }
    Ok(l)
}

/// Verifies the universal property against a competitor `S: K → C` with
/// `φ: S G ⇒ D` (right) or `φ: D ⇒ S G` (left).
///
/// Builds `ν` by factoring the cones `φ_J ∘ S(f)` through the universal
/// ones, checks `ρ ∘ ν G = φ`, and confirms by exhaustive enumeration that
/// `ν` is the only such transformation.
pub fn kan_universal_check(kan: &KanResult, competitor: &FunctorData, phi: &FunctorNat) -> Result<FunctorNat> {
    if kan.side == Side::Left {
        return kan_universal_check(&kan.dual(), &competitor.opposite(), phi);
    }
    let (d, g) = (&kan.diagram, &kan.along);
    let (j, c, kc) = (d.source(), d.target(), g.target());
    let Some(ext) = &kan.extension else {
        return Err(Error::NoMediator);
    };
    if **competitor.source() != **kc || **competitor.target() != **c {
        return Err(Error::BaseMismatch);
    }
    phi.check(&g.then(competitor)?, d)?;
    let unit = kan.unit_transformation().ok_or(Error::NoMediator)?;
    let mut components = Vec::with_capacity(kc.num_objects());
    for k in kc.objects() {
        let universal = kan.cones[k.0].as_ref().ok_or(Error::NoMediator)?;
        let cone = WeightedCone {
            tip: competitor.ob(k),
            legs: j
                .objects()
                .map(|x| {
                    kc.hom(k, g.ob(x))
                        .iter()
                        .map(|&f| c.comp(phi.components[x.0], competitor.mor(f)))
                        .collect()
                })
                .collect(),
        };
        components.push(mediator(c, universal, &cone).ok_or(Error::NoMediator)?);
    }
    let nu = FunctorNat { components };
    nu.check(competitor, ext)?;
    let satisfies = |n: &FunctorNat| {
        j.objects()
            .all(|x| c.comp(unit.components[x.0], n.components[g.ob(x).0]) == phi.components[x.0])
    };
    if !satisfies(&nu) {
        return Err(Error::NoMediator);
    }
    let all: Vec<FunctorNat> = enumerate_transformations(competitor, ext)?
        .into_iter()
        .filter(|n| satisfies(n))
        .collect();
    match all.len() {
        1 if all[0] == nu => Ok(nu),
        1 => Err(Error::InternalDisagreement("enumerated mediator differs from the recipe".into())),
        0 => Err(Error::NoMediator),
        n => Err(Error::NonUniqueMediator(n)),
    }
}

/// Whether each component of the unit is an isomorphism of `c`.
pub fn unit_is_isomorphism(kan: &KanResult, c: &Arc<FinCategory>) -> Vec<Option<bool>> {
    kan.unit.iter().map(|u| u.map(|m| c.is_isomorphism(m))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::extend::extend;
    use crate::setfunctor::hom_functor;

    fn arc(c: FinCategory) -> Arc<FinCategory> {
        Arc::new(c)
    }

    fn sizes(fs: &FinCategory, objects: &[Option<Obj>]) -> Vec<String> {
        objects.iter().map(|o| fs.object_name(o.unwrap()).to_string()).collect()
    }

    #[test]
    fn along_identity() {
        let c = arc(catalog::split_idem());
        let id = FunctorData::identity(c.clone());
        for kan in [right_kan_pointwise(&id, &id).unwrap(), left_kan_pointwise(&id, &id).unwrap()] {
            assert!(kan.is_total());
            let e = kan.extension.as_ref().unwrap();
            assert!(unit_is_isomorphism(&kan, &c).iter().all(|x| *x == Some(true)));
            // Up to the unit isomorphism the extension is the identity.
            assert_eq!(e.object_map(), id.object_map());
        }
    }

    #[test]
    fn from_a_point_into_finite_sets() {
        let one = arc(catalog::one());
        let arr = arc(catalog::arr());
        let fs = arc(catalog::finite_sets(&[0, 1, 2]));
        let d = FunctorData::pick_object(one.clone(), fs.clone(), fs.object("s2").unwrap()).unwrap();
        let g = FunctorData::pick_object(one.clone(), arr.clone(), Obj(0)).unwrap();
        let ran = right_kan_pointwise(&d, &g).unwrap();
        assert_eq!(sizes(&fs, &ran.objects), ["s2", "s1"]);
        assert!(fs.is_isomorphism(ran.unit[0].unwrap()));
        let lan = left_kan_pointwise(&d, &g).unwrap();
        assert_eq!(sizes(&fs, &lan.objects), ["s2", "s2"]);
        let empty = FunctorData::pick_object(one.clone(), fs.clone(), fs.object("s0").unwrap()).unwrap();
        let lan = left_kan_pointwise(&empty, &g).unwrap();
        assert_eq!(sizes(&fs, &lan.objects), ["s0", "s0"]);
    }

    #[test]
    fn universal_property() {
        let one = arc(catalog::one());
        let arr = arc(catalog::arr());
        let fs = arc(catalog::finite_sets(&[0, 1, 2]));
        let d = FunctorData::pick_object(one.clone(), fs.clone(), fs.object("s2").unwrap()).unwrap();
        let g = FunctorData::pick_object(one.clone(), arr.clone(), Obj(0)).unwrap();
        for kan in [right_kan_pointwise(&d, &g).unwrap(), left_kan_pointwise(&d, &g).unwrap()] {
            let ext = kan.extension.clone().unwrap();
            let unit = kan.unit_transformation().unwrap();
            let nu = kan_universal_check(&kan, &ext, &unit).unwrap();
            assert!(nu.components.iter().all(|&m| fs.is_identity(m)));
        }
        // Constant competitor at the one-element set.
        let ran = right_kan_pointwise(&d, &g).unwrap();
        let s1 = fs.object("s1").unwrap();
        let constant = FunctorData::new(arr.clone(), fs.clone(), vec![s1, s1], vec![fs.id(s1); 3]).unwrap();
        let phis = enumerate_transformations(&g.then(&constant).unwrap(), &d).unwrap();
        assert_eq!(phis.len(), 2);
        for phi in phis {
            kan_universal_check(&ran, &constant, &phi).unwrap();
        }
    }

    #[test]
    fn weighted_limit_as_kan_extension() {
        let arr = arc(catalog::arr());
        let w = hom_functor(&arr, Obj(0), Variance::Covariant);
        let ext = extend(&arr, &w).unwrap();
        let d = FunctorData::identity(arr.clone());
        let ran = right_kan_pointwise(&d, &ext.inclusion()).unwrap();
        let direct = weighted_limit_in_c(&WeightedDiagram::new(d, w).unwrap()).unwrap().unwrap();
        let e = ext.extra();
        assert_eq!(ran.objects[e.0], Some(direct.object));
        assert_eq!(ran.cones[e.0].as_ref(), Some(&direct.cone));
    }
}
