//! Finite sets with named elements and functions between them.

use std::fmt;

use crate::error::{Error, Result};

/// A finite set whose elements are distinct names kept in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinSet {
    label: String,
    elements: Vec<String>,
}

impl FinSet {
    /// Builds a set, sorting the elements. Duplicates are rejected.
    pub fn new(label: impl Into<String>, elements: impl IntoIterator<Item = impl Into<String>>) -> Result<Self> {
        let mut elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        elements.sort();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateName(w[0].clone()));
        }
        Ok(FinSet {
            label: label.into(),
            elements,
        })
    }

    /// Builds a set from elements that are already sorted and distinct.
    pub(crate) fn from_sorted(label: impl Into<String>, elements: Vec<String>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        FinSet {
            label: label.into(),
            elements,
        }
    }

    pub fn empty(label: impl Into<String>) -> Self {
        FinSet {
            label: label.into(),
            elements: Vec::new(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.binary_search_by(|e| e.as_str().cmp(name)).ok()
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.elements.join(", "))
    }
}

/// A total function between finite sets, stored as an image table over
/// element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinFunction {
    map: Vec<usize>,
    cod: usize,
}

impl FinFunction {
    pub fn new(map: Vec<usize>, cod: usize) -> Result<Self> {
        if let Some(&bad) = map.iter().find(|&&y| y >= cod) {
            return Err(Error::ValidationFailed(format!(
                "function image {bad} outside codomain of size {cod}"
            )));
        }
        Ok(FinFunction { map, cod })
    }

    pub(crate) fn new_unchecked(map: Vec<usize>, cod: usize) -> Self {
        debug_assert!(map.iter().all(|&y| y < cod));
        FinFunction { map, cod }
    }

    pub fn identity(n: usize) -> Self {
        FinFunction {
            map: (0..n).collect(),
            cod: n,
        }
    }

    pub fn dom_len(&self) -> usize {
        self.map.len()
    }

    pub fn cod_len(&self) -> usize {
        self.cod
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &FinFunction) -> FinFunction {
        debug_assert_eq!(first.cod, self.map.len());
        FinFunction {
            map: first.map.iter().map(|&x| self.map[x]).collect(),
            cod: self.cod,
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.map.len() == self.cod && self.is_injective()
    }
}

/// Sorts `(name, payload)` pairs by name and splits them, rejecting
/// duplicate names.
pub(crate) fn sort_labeled<T>(mut items: Vec<(String, T)>) -> Result<(Vec<String>, Vec<T>)> {
    items.sort_by(|a, b| a.0.cmp(&b.0));
    if let Some(w) = items.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::DuplicateName(w[0].0.clone()));
    }
    Ok(items.into_iter().unzip())
}

/// Permutation sending each position of `names` to its rank in sorted order.
pub(crate) fn sorting_permutation(names: &[String]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..names.len()).collect();
    order.sort_by(|&a, &b| names[a].cmp(&names[b]));
    let mut rank = vec![0; names.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    rank
}

/// Joins element names into a tuple label such as `(a,b,c)`.
pub(crate) fn tuple_name<S: AsRef<str>>(parts: &[S]) -> String {
    let mut s = String::from("(");
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(p.as_ref());
    }
    s.push(')');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sets_are_sorted_and_distinct() {
        let s = FinSet::new("S", ["b", "a", "c"]).unwrap();
        assert_eq!(s.elements(), ["a", "b", "c"]);
        assert_eq!(s.index_of("c"), Some(2));
        assert!(FinSet::new("S", ["a", "a"]).is_err());
    }

    #[test]
    fn composition_and_bijectivity() {
        let swap = FinFunction::new(vec![1, 0], 2).unwrap();
        assert_eq!(swap.after(&swap), FinFunction::identity(2));
        assert!(swap.is_bijective());
        let constant = FinFunction::new(vec![0, 0], 1).unwrap();
        assert!(!constant.is_injective());
        assert!(FinFunction::new(vec![2], 2).is_err());
    }

    #[test]
    fn permutation_ranks() {
        let names = vec!["c".to_string(), "a".to_string(), "b".to_string()];
        assert_eq!(sorting_permutation(&names), vec![2, 0, 1]);
    }
}
