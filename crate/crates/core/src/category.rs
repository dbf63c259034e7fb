//! Finite categories given by full composition tables.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, LawViolation, Result};
use crate::search::UNDEF;
use crate::set::sorting_permutation;

/// Index of an object in a [`FinCategory`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Obj(pub usize);

/// Index of a morphism in a [`FinCategory`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mor(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismInfo {
    pub name: String,
    pub dom: Obj,
    pub cod: Obj,
}

/// A finite category.
///
/// Objects and morphisms are stored in lexicographic order of their names,
/// so two categories built from the same data in any order are identical.
/// Values produced by [`CategoryBuilder::finish`] or [`RawCategory::build`]
/// satisfy all category laws; [`CategoryBuilder::finish_unchecked`] and
/// [`RawCategory::resolve`] skip the law check so that broken tables can be
/// inspected with [`validate_category`].
#[derive(Debug, Clone)]
pub struct FinCategory {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<MorphismInfo>,
    identities: Vec<Option<Mor>>,
    comp: Vec<usize>,
    homs: Vec<Vec<Mor>>,
    outgoing: Vec<Vec<Mor>>,
}

impl PartialEq for FinCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.comp == other.comp
    }
}

impl Eq for FinCategory {}

impl FinCategory {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = Obj> + Clone {
        (0..self.objects.len()).map(Obj)
    }

    pub fn morphisms(&self) -> impl ExactSizeIterator<Item = Mor> + Clone {
        (0..self.morphisms.len()).map(Mor)
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, x: Obj) -> &str {
        &self.objects[x.0]
    }

    pub fn morphism_info(&self, f: Mor) -> &MorphismInfo {
        &self.morphisms[f.0]
    }

    pub fn mor_name(&self, f: Mor) -> &str {
        &self.morphisms[f.0].name
    }

    pub fn dom(&self, f: Mor) -> Obj {
        self.morphisms[f.0].dom
    }

    pub fn cod(&self, f: Mor) -> Obj {
        self.morphisms[f.0].cod
    }

    pub fn object(&self, name: &str) -> Result<Obj> {
        self.objects
            .binary_search_by(|o| o.as_str().cmp(name))
            .map(Obj)
            .map_err(|_| Error::UnknownObject(name.to_string()))
    }

    pub fn morphism(&self, name: &str) -> Result<Mor> {
        self.morphisms
            .binary_search_by(|m| m.name.as_str().cmp(name))
            .map(Mor)
            .map_err(|_| Error::UnknownMorphism(name.to_string()))
    }

    /// Identity of `x`. Panics on a raw table without one.
    pub fn id(&self, x: Obj) -> Mor {
        self.identities[x.0].expect("object without identity")
    }

    pub fn is_identity(&self, f: Mor) -> bool {
        self.identities[self.dom(f).0] == Some(f)
    }

    /// `g ∘ f`, when defined.
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        match self.comp[g.0 * self.morphisms.len() + f.0] {
            UNDEF => None,
            h => Some(Mor(h)),
        }
    }

    /// `g ∘ f` for a composable pair of a valid category.
    pub fn comp(&self, g: Mor, f: Mor) -> Mor {
        self.compose(g, f).unwrap_or_else(|| {
            panic!(
                "`{}` and `{}` are not composable",
                self.mor_name(g),
                self.mor_name(f)
            )
        })
    }

    /// The hom-set `C(a, b)` in canonical order.
    pub fn hom(&self, a: Obj, b: Obj) -> &[Mor] {
        &self.homs[a.0 * self.objects.len() + b.0]
    }

    /// All morphisms with domain `a`.
    pub fn outgoing(&self, a: Obj) -> &[Mor] {
        &self.outgoing[a.0]
    }

    pub fn is_isomorphism(&self, f: Mor) -> bool {
        self.inverse(f).is_some()
    }

    pub fn inverse(&self, f: Mor) -> Option<Mor> {
        let (a, b) = (self.dom(f), self.cod(f));
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == Some(self.id(a)) && self.compose(f, g) == Some(self.id(b)))
    }

    pub fn are_isomorphic(&self, a: Obj, b: Obj) -> bool {
        self.hom(a, b).iter().any(|&f| self.is_isomorphism(f))
    }

    /// Name-level tables, in canonical order.
    pub fn to_raw(&self) -> RawCategory {
        let mut composition = Vec::new();
        for g in self.morphisms() {
            for f in self.morphisms() {
                if let Some(h) = self.compose(g, f) {
                    composition.push([
                        self.mor_name(g).to_string(),
                        self.mor_name(f).to_string(),
                        self.mor_name(h).to_string(),
                    ]);
                }
            }
        }
        RawCategory {
            name: self.name.clone(),
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| {
                    [
                        m.name.clone(),
                        self.objects[m.dom.0].clone(),
                        self.objects[m.cod.0].clone(),
                    ]
                })
                .collect(),
            identities: self
                .objects()
                .filter_map(|x| {
                    self.identities[x.0].map(|i| [self.object_name(x).to_string(), self.mor_name(i).to_string()])
                })
                .collect(),
            composition,
        }
    }
}

impl fmt::Display for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} objects, {} morphisms",
            self.name,
            self.num_objects(),
            self.num_morphisms()
        )
    }
}

/// Index-based construction of a category. Names are sorted on `finish`.
#[derive(Debug, Clone, Default)]
pub struct CategoryBuilder {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<(String, usize, usize)>,
    identities: Vec<Option<usize>>,
    comp: HashMap<(usize, usize), usize>,
}

impl CategoryBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        CategoryBuilder {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn object(&mut self, name: impl Into<String>) -> usize {
        self.objects.push(name.into());
        self.identities.push(None);
        self.objects.len() - 1
    }

    pub fn morphism(&mut self, name: impl Into<String>, dom: usize, cod: usize) -> usize {
        self.morphisms.push((name.into(), dom, cod));
        self.morphisms.len() - 1
    }

    /// Adds a morphism and declares it the identity of `obj`.
    pub fn identity(&mut self, name: impl Into<String>, obj: usize) -> usize {
        let m = self.morphism(name, obj, obj);
        self.identities[obj] = Some(m);
        m
    }

    pub fn set_identity(&mut self, obj: usize, mor: usize) {
        self.identities[obj] = Some(mor);
    }

    /// Records `g ∘ f = h`.
    pub fn compose(&mut self, g: usize, f: usize, h: usize) {
        self.comp.insert((g, f), h);
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn dom(&self, f: usize) -> usize {
        self.morphisms[f].1
    }

    pub fn cod(&self, f: usize) -> usize {
        self.morphisms[f].2
    }

    /// Fills the table for every composable pair using `rule(g, f)`.
    pub fn compose_all(&mut self, mut rule: impl FnMut(usize, usize) -> usize) {
        for g in 0..self.morphisms.len() {
            for f in 0..self.morphisms.len() {
                if self.morphisms[g].1 == self.morphisms[f].2 {
                    let h = rule(g, f);
                    self.comp.insert((g, f), h);
                }
            }
        }
    }

    /// Canonicalizes names without checking category laws.
    pub fn finish_unchecked(self) -> Result<FinCategory> {
        let obj_rank = sorting_permutation(&self.objects);
        let mor_names: Vec<String> = self.morphisms.iter().map(|m| m.0.clone()).collect();
        let mor_rank = sorting_permutation(&mor_names);

        let n = self.objects.len();
        let m = self.morphisms.len();
        let mut objects = vec![String::new(); n];
        for (i, name) in self.objects.into_iter().enumerate() {
            objects[obj_rank[i]] = name;
        }
        if let Some(w) = objects.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateName(w[0].clone()));
        }
        let mut morphisms = vec![
            MorphismInfo {
                name: String::new(),
                dom: Obj(0),
                cod: Obj(0)
            };
            m
        ];
        for (i, (name, dom, cod)) in self.morphisms.into_iter().enumerate() {
            morphisms[mor_rank[i]] = MorphismInfo {
                name,
                dom: Obj(obj_rank[dom]),
                cod: Obj(obj_rank[cod]),
            };
        }
        if let Some(w) = morphisms.windows(2).find(|w| w[0].name == w[1].name) {
            return Err(Error::DuplicateName(w[0].name.clone()));
        }
        let mut identities = vec![None; n];
        for (i, id) in self.identities.into_iter().enumerate() {
            identities[obj_rank[i]] = id.map(|f| Mor(mor_rank[f]));
        }
        let mut comp = vec![UNDEF; m * m];
        for ((g, f), h) in self.comp {
            comp[mor_rank[g] * m + mor_rank[f]] = mor_rank[h];
        }
        let mut homs = vec![Vec::new(); n * n];
        let mut outgoing = vec![Vec::new(); n];
        for (i, info) in morphisms.iter().enumerate() {
            homs[info.dom.0 * n + info.cod.0].push(Mor(i));
            outgoing[info.dom.0].push(Mor(i));
        }
        Ok(FinCategory {
            name: self.name,
            objects,
            morphisms,
            identities,
            comp,
            homs,
            outgoing,
        })
    }

    /// Canonicalizes and checks every category law.
    pub fn finish(self) -> Result<FinCategory> {
        let c = self.finish_unchecked()?;
        validate_category(&c)?;
        Ok(c)
    }
}

/// Name-level category tables, as read from or written to files.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RawCategory {
    pub name: String,
    pub objects: Vec<String>,
    /// `[name, dom, cod]`
    pub morphisms: Vec<[String; 3]>,
    /// `[object, identity morphism]`
    pub identities: Vec<[String; 2]>,
    /// `[g, f, g∘f]`
    pub composition: Vec<[String; 3]>,
}

impl RawCategory {
    /// Resolves all names; category laws are not checked.
    pub fn resolve(&self) -> Result<FinCategory> {
        let mut b = CategoryBuilder::new(self.name.clone());
        let mut objs = HashMap::new();
        for o in &self.objects {
            if objs.insert(o.as_str(), b.object(o.clone())).is_some() {
                return Err(Error::DuplicateName(o.clone()));
            }
        }
        let obj = |name: &str| objs.get(name).copied().ok_or_else(|| Error::UnresolvedReference(name.to_string()));
        let mut mors = HashMap::new();
        for [name, dom, cod] in &self.morphisms {
            let idx = b.morphism(name.clone(), obj(dom)?, obj(cod)?);
            if mors.insert(name.as_str(), idx).is_some() {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        let mor = |name: &str| mors.get(name).copied().ok_or_else(|| Error::UnresolvedReference(name.to_string()));
        for [o, i] in &self.identities {
            b.set_identity(obj(o)?, mor(i)?);
        }
        for [g, f, h] in &self.composition {
            b.compose(mor(g)?, mor(f)?, mor(h)?);
        }
        b.finish_unchecked()
    }

    /// Resolves names and checks category laws.
    pub fn build(&self) -> Result<FinCategory> {
        let c = self.resolve()?;
        validate_category(&c)?;
        Ok(c)
    }
}

/// Checks the category laws exhaustively, reporting the first violation.
///
/// Checks run in order: identities, presence of composites, unit laws,
/// types of composites, associativity.
pub fn validate_category(c: &FinCategory) -> Result<(), LawViolation> {
    for x in c.objects() {
        match c.identities[x.0] {
            None => {
                return Err(LawViolation::MissingIdentity {
                    object: c.object_name(x).to_string(),
                })
            }
            Some(i) if c.dom(i) != x || c.cod(i) != x => {
                return Err(LawViolation::MisplacedIdentity {
                    object: c.object_name(x).to_string(),
                    identity: c.mor_name(i).to_string(),
                })
            }
            Some(_) => {}
        }
    }
    for g in c.morphisms() {
        for f in c.morphisms() {
            let composable = c.dom(g) == c.cod(f);
            let fail = |reason: &str| LawViolation::NonClosedComposition {
                g: c.mor_name(g).to_string(),
                f: c.mor_name(f).to_string(),
                reason: reason.to_string(),
            };
            match (composable, c.compose(g, f)) {
                (true, None) => return Err(fail("missing table entry")),
                (false, Some(_)) => return Err(fail("entry for a non-composable pair")),
                _ => {}
            }
        }
    }
    for f in c.morphisms() {
        let (a, b) = (c.dom(f), c.cod(f));
        if c.compose(c.id(b), f) != Some(f) {
            return Err(LawViolation::BrokenUnit {
                morphism: c.mor_name(f).to_string(),
                side: "left",
            });
        }
        if c.compose(f, c.id(a)) != Some(f) {
            return Err(LawViolation::BrokenUnit {
                morphism: c.mor_name(f).to_string(),
                side: "right",
            });
        }
    }
    for g in c.morphisms() {
        for f in c.morphisms() {
            if let Some(h) = c.compose(g, f) {
                if c.dom(h) != c.dom(f) || c.cod(h) != c.cod(g) {
                    return Err(LawViolation::NonClosedComposition {
                        g: c.mor_name(g).to_string(),
                        f: c.mor_name(f).to_string(),
                        reason: format!("result `{}` has the wrong type", c.mor_name(h)),
                    });
                }
            }
        }
    }
    for f in c.morphisms() {
        for &g in c.outgoing(c.cod(f)) {
            let gf = c.comp(g, f);
            for &h in c.outgoing(c.cod(g)) {
                if c.compose(h, gf) != c.compose(c.comp(h, g), f) {
                    return Err(LawViolation::BrokenAssociativity {
                        h: c.mor_name(h).to_string(),
                        g: c.mor_name(g).to_string(),
                        f: c.mor_name(f).to_string(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// The opposite category: same names, reversed arrows.
pub fn opposite(c: &FinCategory) -> FinCategory {
    let name = match c.name.strip_suffix("^op") {
        Some(base) => base.to_string(),
        None => format!("{}^op", c.name),
    };
    let m = c.num_morphisms();
    let mut comp = vec![UNDEF; m * m];
    for g in 0..m {
        for f in 0..m {
            comp[g * m + f] = c.comp[f * m + g];
        }
    }
    let morphisms: Vec<MorphismInfo> = c
        .morphisms
        .iter()
        .map(|info| MorphismInfo {
            name: info.name.clone(),
            dom: info.cod,
            cod: info.dom,
        })
        .collect();
    let n = c.num_objects();
    let mut homs = vec![Vec::new(); n * n];
    let mut outgoing = vec![Vec::new(); n];
    for (i, info) in morphisms.iter().enumerate() {
        homs[info.dom.0 * n + info.cod.0].push(Mor(i));
        outgoing[info.dom.0].push(Mor(i));
    }
    FinCategory {
        name,
        objects: c.objects.clone(),
        morphisms,
        identities: c.identities.clone(),
        comp,
        homs,
        outgoing,
    }
}

/// The product category; objects `(A,B)` and morphisms `(f,g)`.
pub fn product(c: &FinCategory, d: &FinCategory) -> Result<FinCategory> {
    let mut b = CategoryBuilder::new(format!("{}×{}", c.name, d.name));
    let nd = d.num_objects();
    for x in c.objects() {
        for y in d.objects() {
            b.object(format!("({},{})", c.object_name(x), d.object_name(y)));
        }
    }
    let md = d.num_morphisms();
    for f in c.morphisms() {
        for g in d.morphisms() {
            b.morphism(
                format!("({},{})", c.mor_name(f), d.mor_name(g)),
                c.dom(f).0 * nd + d.dom(g).0,
                c.cod(f).0 * nd + d.cod(g).0,
            );
        }
    }
    for x in c.objects() {
        for y in d.objects() {
            b.set_identity(x.0 * nd + y.0, c.id(x).0 * md + d.id(y).0);
        }
    }
    b.compose_all(|p, q| {
        let (f2, g2) = (Mor(p / md), Mor(p % md));
        let (f1, g1) = (Mor(q / md), Mor(q % md));
        c.comp(f2, f1).0 * md + d.comp(g2, g1).0
    });
    b.finish_unchecked()
}

/// Index of the product object `(x, y)` in `product(c, d)`.
///
/// Names are sorted on construction, so the index is looked up by name.
pub fn product_object(prod: &FinCategory, c: &FinCategory, x: Obj, d: &FinCategory, y: Obj) -> Obj {
    prod.object(&format!("({},{})", c.object_name(x), d.object_name(y)))
        .expect("object of the product category")
}

/// Index of the product morphism `(f, g)` in `product(c, d)`.
pub fn product_morphism(prod: &FinCategory, c: &FinCategory, f: Mor, d: &FinCategory, g: Mor) -> Mor {
    prod.morphism(&format!("({},{})", c.mor_name(f), d.mor_name(g)))
        .expect("morphism of the product category")
}

/// A discrete category on the given objects, identities named `id_<obj>`.
pub fn discrete(name: &str, objects: &[&str]) -> Result<FinCategory> {
    let mut b = CategoryBuilder::new(name);
    for o in objects {
        let x = b.object(*o);
        b.identity(format!("id_{o}"), x);
    }
    b.compose_all(|g, _| g);
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn arr_is_valid_with_three_morphisms() {
        let arr = catalog::arr();
        assert_eq!(validate_category(&arr), Ok(()));
        assert_eq!((arr.num_objects(), arr.num_morphisms()), (2, 3));
    }

    #[test]
    fn redirected_unit_is_reported() {
        let mut raw = catalog::arr().to_raw();
        for entry in &mut raw.composition {
            if entry[0] == "id_1" && entry[1] == "a" {
                entry[2] = "id_1".to_string();
            }
        }
        let c = raw.resolve().unwrap();
        let err = validate_category(&c).unwrap_err();
        assert_eq!(
            err,
            LawViolation::BrokenUnit {
                morphism: "a".into(),
                side: "left"
            }
        );
    }

    #[test]
    fn unit_law_witness_names_the_morphism() {
        // Idem with e ∘ id = id instead of e: well-typed but not unital.
        let mut raw = catalog::idem().to_raw();
        for entry in &mut raw.composition {
            if entry[0] == "e" && entry[1] == "id_x" {
                entry[2] = "id_x".to_string();
            }
        }
        let err = raw.build().unwrap_err();
        assert!(matches!(err, Error::Law(LawViolation::BrokenUnit { ref morphism, .. }) if morphism == "e"));
    }

    #[test]
    fn broken_associativity_is_reported() {
        // A one-object category whose table is unital but not associative:
        // x∘x = y, y∘x = id, x∘y = x, y∘y = y.
        let mut b = CategoryBuilder::new("bad");
        let o = b.object("*");
        let id = b.identity("1", o);
        let x = b.morphism("x", o, o);
        let y = b.morphism("y", o, o);
        let table = [[id, x, y], [x, y, x], [y, id, y]];
        for g in [id, x, y] {
            for f in [id, x, y] {
                b.compose(g, f, table[g][f]);
            }
        }
        let err = b.finish().unwrap_err();
        assert!(matches!(err, Error::Law(LawViolation::BrokenAssociativity { .. })));
    }

    #[test]
    fn missing_identity_and_unresolved_names() {
        let mut raw = catalog::arr().to_raw();
        raw.identities.retain(|[o, _]| o != "1");
        assert!(matches!(raw.build(), Err(Error::Law(LawViolation::MissingIdentity { .. }))));
        let mut raw = catalog::arr().to_raw();
        raw.composition.push(["zz".into(), "a".into(), "a".into()]);
        assert!(matches!(raw.resolve(), Err(Error::UnresolvedReference(ref n)) if n == "zz"));
    }

    #[test]
    fn idem_is_valid() {
        let idem = catalog::idem();
        assert_eq!(validate_category(&idem), Ok(()));
        assert_eq!(idem.num_morphisms(), 2);
    }

    #[test]
    fn opposite_examples() {
        let arr = catalog::arr();
        let op = opposite(&arr);
        assert_eq!(validate_category(&op), Ok(()));
        let a = op.morphism("a").unwrap();
        assert_eq!((op.object_name(op.dom(a)), op.object_name(op.cod(a))), ("1", "0"));
        assert_eq!(opposite(&op), arr);
        assert_eq!(opposite(&catalog::one()), catalog::one());
        // One-object monoid with a commutative table is self-dual.
        assert_eq!(opposite(&catalog::idem()), catalog::idem());
    }

    #[test]
    fn product_is_valid() {
        let p = product(&catalog::arr(), &catalog::idem()).unwrap();
        assert_eq!(validate_category(&p), Ok(()));
        assert_eq!(p.num_morphisms(), 6);
    }

    #[test]
    fn canonical_order_is_insertion_independent() {
        let mut b1 = CategoryBuilder::new("p");
        let x = b1.object("x");
        let y = b1.object("y");
        b1.identity("id_x", x);
        b1.identity("id_y", y);
        b1.compose_all(|g, _| g);
        let mut b2 = CategoryBuilder::new("p");
        let y = b2.object("y");
        let x = b2.object("x");
        b2.identity("id_y", y);
        b2.identity("id_x", x);
        b2.compose_all(|g, _| g);
        assert_eq!(b1.finish().unwrap(), b2.finish().unwrap());
    }
}
