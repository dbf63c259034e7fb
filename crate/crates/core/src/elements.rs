//! The category of elements of a set functor or presheaf.

use std::sync::Arc;

use crate::cap::check_size;
use crate::category::{CategoryBuilder, FinCategory, Mor, Obj};
use crate::error::Result;
use crate::functor::FunctorData;
use crate::setfunctor::{SetFunctor, Variance};

/// `El(W)` with its projection to the base.
///
/// Objects are the pairs `(J, w)` with `w ∈ W(J)`, named `(J,w)`.
/// For covariant `W` a morphism `(J,w) → (K,g_*w)` is named `(g,w)`; for
/// contravariant `W` a morphism `(J,g^*u) → (K,u)` is named `(g,u)`.
#[derive(Debug, Clone)]
pub struct ElementsCategory {
    category: Arc<FinCategory>,
    projection: FunctorData,
    index: Vec<(Obj, usize)>,
    lookup: Vec<Vec<Obj>>,
}

impl ElementsCategory {
    pub fn category(&self) -> &Arc<FinCategory> {
        &self.category
    }

    /// The projection `Π: El(W) → J` forgetting the element.
    pub fn projection(&self) -> &FunctorData {
        &self.projection
    }

    /// The pair `(J, w)` behind an object of `El(W)`.
    pub fn index(&self, x: Obj) -> (Obj, usize) {
        self.index[x.0]
    }

    /// The object `(J, w)`.
    pub fn object(&self, j: Obj, w: usize) -> Obj {
        self.lookup[j.0][w]
    }
}

pub fn category_of_elements(w: &SetFunctor) -> Result<ElementsCategory> {
    let j = w.base();
    check_size(w.total_size() as u128)?;
    let mut b = CategoryBuilder::new(format!("El({})", j.name()));
    let mut pre: Vec<Vec<usize>> = Vec::new();
    for x in j.objects() {
        let row = w
            .set(x)
            .elements()
            .iter()
            .map(|e| b.object(format!("({},{})", j.object_name(x), e)))
            .collect();
        pre.push(row);
    }
    // One morphism per (g, element at the source of the action).
    let mut mor_of: Vec<Vec<usize>> = Vec::new();
    let mut info: Vec<(Mor, usize)> = Vec::new();
    let mut names: Vec<(String, Mor)> = Vec::new();
    let total: u128 = j.morphisms().map(|g| w.set(w.action_ends(g).0).len() as u128).sum();
    check_size(total)?;
    for g in j.morphisms() {
        let (src, dst) = w.action_ends(g);
        let mut row = Vec::new();
        for u in 0..w.set(src).len() {
            let v = w.act(g, u);
            let (name, dom, cod) = match w.variance() {
                Variance::Covariant => (
                    format!("({},{})", j.mor_name(g), w.set(src).element(u)),
                    pre[src.0][u],
                    pre[dst.0][v],
                ),
                Variance::Contravariant => (
                    format!("({},{})", j.mor_name(g), w.set(src).element(u)),
                    pre[dst.0][v],
                    pre[src.0][u],
                ),
            };
            names.push((name.clone(), g));
            let m = b.morphism(name, dom, cod);
            if j.is_identity(g) {
                b.set_identity(dom, m);
            }
            row.push(m);
            info.push((g, u));
        }
        mor_of.push(row);
    }
    b.compose_all(|second, first| {
        let (g2, u2) = info[second];
        let (g1, u1) = info[first];
        let h = j.comp(g2, g1);
        // The element indexing the composite sits at the source of its action.
        match w.variance() {
            Variance::Covariant => mor_of[h.0][u1],
            Variance::Contravariant => mor_of[h.0][u2],
        }
    });
    let category = Arc::new(b.finish()?);
    let mut lookup = Vec::new();
    let mut index = vec![(Obj(0), 0); category.num_objects()];
    for x in j.objects() {
        let row: Vec<Obj> = w
            .set(x)
            .elements()
            .iter()
            .map(|e| category.object(&format!("({},{})", j.object_name(x), e)).unwrap())
            .collect();
        for (u, o) in row.iter().enumerate() {
            index[o.0] = (x, u);
        }
        lookup.push(row);
    }
    let obj_map = index.iter().map(|&(x, _)| x).collect();
    let mut mor_map = vec![Mor(0); category.num_morphisms()];
    for (name, g) in names {
        mor_map[category.morphism(&name).unwrap().0] = g;
    }
    let projection = FunctorData::new(category.clone(), j.clone(), obj_map, mor_map)?;
    Ok(ElementsCategory {
        category,
        projection,
        index,
        lookup,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::functor::find_isomorphism;
    use crate::set::FinSet;
    use crate::setfunctor::hom_functor;

    #[test]
    fn elements_of_representable_on_arr() {
        let arr = Arc::new(catalog::arr());
        let h = hom_functor(&arr, arr.object("0").unwrap(), Variance::Covariant);
        let el = category_of_elements(&h).unwrap();
        let c = el.category();
        assert_eq!(c.object_names(), ["(0,id_0)", "(1,a)"]);
        assert_eq!(c.num_morphisms(), 3);
        assert!(find_isomorphism(c, &arr).unwrap().is_some());
    }

    #[test]
    fn elements_of_terminal_functor_is_the_base() {
        let c = Arc::new(catalog::split_idem());
        let el = category_of_elements(&SetFunctor::terminal(c.clone(), Variance::Covariant)).unwrap();
        assert!(find_isomorphism(el.category(), &c).unwrap().is_some());
    }

    #[test]
    fn two_elements_merging() {
        let arr = Arc::new(catalog::arr());
        let sets = vec![FinSet::new("0", ["u", "v"]).unwrap(), FinSet::new("1", ["w"]).unwrap()];
        let w = SetFunctor::from_fn(arr.clone(), Variance::Covariant, sets, |f, x| {
            if arr.is_identity(f) {
                x
            } else {
                0
            }
        })
        .unwrap();
        let el = category_of_elements(&w).unwrap();
        let c = el.category();
        assert_eq!(c.num_objects(), 3);
        assert_eq!(c.morphisms().filter(|&m| !c.is_identity(m)).count(), 2);
    }

    #[test]
    fn contravariant_elements() {
        let arr = Arc::new(catalog::arr());
        let h = hom_functor(&arr, arr.object("1").unwrap(), Variance::Contravariant);
        let el = category_of_elements(&h).unwrap();
        // (0,a) → (1,id_1) via a.
        let c = el.category();
        let m = c.morphism("(a,id_1)").unwrap();
        assert_eq!(c.object_name(c.dom(m)), "(0,a)");
        assert_eq!(c.object_name(c.cod(m)), "(1,id_1)");
        assert_eq!(el.projection().mor(m), arr.morphism("a").unwrap());
    }
}
