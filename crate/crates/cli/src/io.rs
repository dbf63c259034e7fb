//! Workspace files: JSON documents of six kinds, parsed with positioned
//! syntax errors and printed in one canonical form.
//!
//! Files that depend on other files name them by paths relative to their
//! own directory. Maps are keyed by object and morphism names; identities
//! may be left out wherever their action is forced.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use fincat::cones::WeightedDiagram;
use fincat::day::StrictMonoidal;
use fincat::ends::Profunctor;
use fincat::{Error, FinCategory, FinFunction, FinSet, FunctorData, Mor, Obj, RawCategory, SetFunctor, Variance};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

type Map<V> = BTreeMap<String, V>;

#[derive(Debug, Deserialize)]
struct Header {
    kind: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CategoryDoc {
    kind: String,
    name: String,
    objects: Vec<String>,
    morphisms: Vec<MorphismDoc>,
    identities: Map<String>,
    composition: Vec<[String; 3]>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismDoc {
    name: String,
    dom: String,
    cod: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctorDoc {
    kind: String,
    source: String,
    target: String,
    objects: Map<String>,
    #[serde(default)]
    morphisms: Map<String>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum VarianceDoc {
    Covariant,
    Contravariant,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetFunctorDoc {
    kind: String,
    category: String,
    variance: VarianceDoc,
    sets: Map<Vec<String>>,
    #[serde(default)]
    actions: Map<Map<String>>,
}

/// `sets[d][c]` is `Φ̄(d, c)`; `left[h][c]` and `right[f][d]` are the
/// actions of non-identity morphisms.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfunctorDoc {
    kind: String,
    source: String,
    target: String,
    sets: Map<Map<Vec<String>>>,
    #[serde(default)]
    left: Map<Map<Map<String>>>,
    #[serde(default)]
    right: Map<Map<Map<String>>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonoidalDoc {
    kind: String,
    category: String,
    unit: String,
    tensor: Vec<[String; 3]>,
    #[serde(default)]
    tensor_morphisms: Vec<[String; 3]>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightedDiagramDoc {
    kind: String,
    diagram: String,
    weight: String,
}

/// A set functor or presheaf with the path of its base category.
#[derive(Debug, Clone)]
pub struct SetFunctorFile {
    pub functor: SetFunctor,
    pub category: String,
}

#[derive(Debug, Clone)]
pub struct FunctorFile {
    pub functor: FunctorData,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone)]
pub struct ProfunctorFile {
    pub profunctor: Profunctor,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone)]
pub struct MonoidalFile {
    pub monoidal: StrictMonoidal,
    pub category: String,
}

#[derive(Debug, Clone)]
pub struct WeightedDiagramFile {
    pub diagram: WeightedDiagram,
    pub diagram_path: String,
    pub weight_path: String,
}

/// A parsed and validated workspace file.
#[derive(Debug, Clone)]
pub enum Value {
    Category(Arc<FinCategory>),
    Functor(FunctorFile),
    SetFunctor(SetFunctorFile),
    Profunctor(ProfunctorFile),
    Monoidal(MonoidalFile),
    WeightedDiagram(WeightedDiagramFile),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Category(_) => "category",
            Value::Functor(_) => "functor",
            Value::SetFunctor(_) => "setfunctor",
            Value::Profunctor(_) => "profunctor",
            Value::Monoidal(_) => "monoidal",
            Value::WeightedDiagram(_) => "weighted-diagram",
        }
    }
}

/// Reads and validates the file at `path`, following references.
pub fn load(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::File {
        path: path.display().to_string(),
        source: Error::Io {
            path: path.display().to_string(),
            source,
        },
    })?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_str(&text, &dir).map_err(|e| match e {
        CliError::Core(source) => CliError::File {
            path: path.display().to_string(),
            source,
        },
        other => other,
    })
}

/// Parses a document whose references are relative to `dir`.
pub fn parse_str(text: &str, dir: &Path) -> Result<Value> {
    let header: Header = from_json(text)?;
    let resolve = |r: &str| -> PathBuf { dir.join(r) };
    Ok(match header.kind.as_str() {
        "category" => Value::Category(Arc::new(category_from_doc(from_json(text)?)?)),
        "functor" => {
            let doc: FunctorDoc = from_json(text)?;
            let source = load_category(&resolve(&doc.source))?;
            let target = load_category(&resolve(&doc.target))?;
            let functor = functor_from_doc(&doc, source, target)?;
            Value::Functor(FunctorFile {
                functor,
                source: doc.source,
                target: doc.target,
            })
        }
        "setfunctor" => {
            let doc: SetFunctorDoc = from_json(text)?;
            let c = load_category(&resolve(&doc.category))?;
            Value::SetFunctor(SetFunctorFile {
                functor: setfunctor_from_doc(&doc, c)?,
                category: doc.category,
            })
        }
        "profunctor" => {
            let doc: ProfunctorDoc = from_json(text)?;
            let source = load_category(&resolve(&doc.source))?;
            let target = load_category(&resolve(&doc.target))?;
            Value::Profunctor(ProfunctorFile {
                profunctor: profunctor_from_doc(&doc, source, target)?,
                source: doc.source,
                target: doc.target,
            })
        }
        "monoidal" => {
            let doc: MonoidalDoc = from_json(text)?;
            let c = load_category(&resolve(&doc.category))?;
            Value::Monoidal(MonoidalFile {
                monoidal: monoidal_from_doc(&doc, c)?,
                category: doc.category,
            })
        }
        "weighted-diagram" => {
            let doc: WeightedDiagramDoc = from_json(text)?;
            let Value::Functor(d) = load(&resolve(&doc.diagram))? else {
                return Err(Error::ValidationFailed(format!("`{}` is not a functor file", doc.diagram)).into());
            };
            let Value::SetFunctor(w) = load(&resolve(&doc.weight))? else {
                return Err(Error::ValidationFailed(format!("`{}` is not a set functor file", doc.weight)).into());
            };
            Value::WeightedDiagram(WeightedDiagramFile {
                diagram: WeightedDiagram::new(d.functor, w.functor)?,
                diagram_path: doc.diagram,
                weight_path: doc.weight,
            })
        }
        other => return Err(Error::ValidationFailed(format!("unknown kind `{other}`")).into()),
    })
}

pub fn load_category(path: &Path) -> Result<Arc<FinCategory>> {
    match load(path)? {
        Value::Category(c) => Ok(c),
        other => Err(CliError::File {
            path: path.display().to_string(),
            source: Error::ValidationFailed(format!("expected a category, found a {}", other.kind())),
        }),
    }
}

fn from_json<T: DeserializeOwned>(text: &str) -> Result<T, Error> {
    serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let message = match full.rfind(" at line ") {
            Some(i) => full[..i].to_string(),
            None => full,
        };
        Error::Syntax {
            line: e.line(),
            column: e.column(),
            message,
        }
    })
}

/// Unknown names inside a file are unresolved references.
fn unresolved(e: Error) -> Error {
    match e {
        Error::UnknownObject(n) | Error::UnknownMorphism(n) => Error::UnresolvedReference(n),
        other => other,
    }
}

fn category_from_doc(doc: CategoryDoc) -> Result<FinCategory, Error> {
    let raw = RawCategory {
        name: doc.name,
        objects: doc.objects,
        morphisms: doc.morphisms.into_iter().map(|m| [m.name, m.dom, m.cod]).collect(),
        identities: doc.identities.into_iter().map(|(o, i)| [o, i]).collect(),
        composition: doc.composition,
    };
    raw.build()
}

fn functor_from_doc(doc: &FunctorDoc, source: Arc<FinCategory>, target: Arc<FinCategory>) -> Result<FunctorData, Error> {
    let objects: Vec<(&str, &str)> = doc.objects.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let morphisms: Vec<(&str, &str)> = doc.morphisms.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    FunctorData::from_names(source, target, &objects, &morphisms).map_err(unresolved)
}

fn index_in(set: &FinSet, name: &str) -> Result<usize, Error> {
    set.index_of(name).ok_or_else(|| Error::UnresolvedReference(name.to_string()))
}

/// The function `dom → cod` given by a name map covering `dom` exactly.
fn function_from_map(map: &Map<String>, dom: &FinSet, cod: &FinSet, what: &str) -> Result<FinFunction, Error> {
    if let Some(extra) = map.keys().find(|k| dom.index_of(k).is_none()) {
        return Err(Error::UnresolvedReference(extra.clone()));
    }
    let table = dom
        .elements()
        .iter()
        .map(|x| {
            let y = map
                .get(x)
                .ok_or_else(|| Error::ValidationFailed(format!("{what}: no image for `{x}`")))?;
            index_in(cod, y)
        })
        .collect::<Result<Vec<_>, Error>>()?;
    FinFunction::new(table, cod.len())
}

fn function_to_map(f: &FinFunction, dom: &FinSet, cod: &FinSet) -> Map<String> {
    dom.elements()
        .iter()
        .enumerate()
        .map(|(i, x)| (x.clone(), cod.element(f.apply(i)).to_string()))
        .collect()
}

fn check_keys<V>(map: &Map<V>, known: impl Fn(&str) -> bool) -> Result<(), Error> {
    match map.keys().find(|k| !known(k)) {
        Some(k) => Err(Error::UnresolvedReference(k.clone())),
        None => Ok(()),
    }
}

fn sets_from_doc(c: &FinCategory, sets: &Map<Vec<String>>) -> Result<Vec<FinSet>, Error> {
    check_keys(sets, |k| c.object(k).is_ok())?;
    c.objects()
        .map(|x| {
            let name = c.object_name(x);
            let elements = sets
                .get(name)
                .ok_or_else(|| Error::ValidationFailed(format!("no set given for object `{name}`")))?;
            FinSet::new(name, elements.iter().cloned())
        })
        .collect()
}

fn setfunctor_from_doc(doc: &SetFunctorDoc, c: Arc<FinCategory>) -> Result<SetFunctor, Error> {
    let variance = match doc.variance {
        VarianceDoc::Covariant => Variance::Covariant,
        VarianceDoc::Contravariant => Variance::Contravariant,
    };
    let sets = sets_from_doc(&c, &doc.sets)?;
    check_keys(&doc.actions, |k| c.morphism(k).is_ok())?;
    let actions = c
        .morphisms()
        .map(|f| {
            let (from, to) = match variance {
                Variance::Covariant => (c.dom(f), c.cod(f)),
                Variance::Contravariant => (c.cod(f), c.dom(f)),
            };
            let name = c.mor_name(f);
            match doc.actions.get(name) {
                Some(map) => function_from_map(map, &sets[from.0], &sets[to.0], name),
                None if c.is_identity(f) => Ok(FinFunction::identity(sets[from.0].len())),
                None => Err(Error::ValidationFailed(format!("no action given for morphism `{name}`"))),
            }
        })
        .collect::<Result<Vec<_>, Error>>()?;
    SetFunctor::new(c, variance, sets, actions)
}

fn profunctor_from_doc(doc: &ProfunctorDoc, source: Arc<FinCategory>, target: Arc<FinCategory>) -> Result<Profunctor, Error> {
    let (c, d) = (&source, &target);
    check_keys(&doc.sets, |k| d.object(k).is_ok())?;
    let mut sets = Vec::with_capacity(d.num_objects());
    for y in d.objects() {
        let row = doc.sets.get(d.object_name(y)).cloned().unwrap_or_default();
        sets.push(sets_from_doc(c, &row).map_err(|e| match e {
            Error::ValidationFailed(m) => Error::ValidationFailed(format!("at `{}`: {m}", d.object_name(y))),
            other => other,
        })?);
    }
    check_keys(&doc.left, |k| d.morphism(k).is_ok())?;
    check_keys(&doc.right, |k| c.morphism(k).is_ok())?;
    let missing = |kind: &str, name: &str| Error::ValidationFailed(format!("no {kind} action given for morphism `{name}`"));
    // left[h][c]: Φ̄(cod h, c) → Φ̄(dom h, c)
    let mut left = vec![Vec::new(); d.num_morphisms()];
    for h in d.morphisms().filter(|&h| !d.is_identity(h)) {
        let name = d.mor_name(h);
        let per = doc.left.get(name).ok_or_else(|| missing("left", name))?;
        check_keys(per, |k| c.object(k).is_ok())?;
        for x in c.objects() {
            let map = per.get(c.object_name(x)).cloned().unwrap_or_default();
            left[h.0].push(function_from_map(&map, &sets[d.cod(h).0][x.0], &sets[d.dom(h).0][x.0], name)?);
        }
    }
    // right[f][d]: Φ̄(d, dom f) → Φ̄(d, cod f)
    let mut right = vec![Vec::new(); c.num_morphisms()];
    for f in c.morphisms().filter(|&f| !c.is_identity(f)) {
        let name = c.mor_name(f);
        let per = doc.right.get(name).ok_or_else(|| missing("right", name))?;
        check_keys(per, |k| d.object(k).is_ok())?;
        for y in d.objects() {
            let map = per.get(d.object_name(y)).cloned().unwrap_or_default();
            right[f.0].push(function_from_map(&map, &sets[y.0][c.dom(f).0], &sets[y.0][c.cod(f).0], name)?);
        }
    }
    Profunctor::from_fn(
        source.clone(),
        target.clone(),
        |y, x| sets[y.0][x.0].clone(),
        |h, x, u| if d.is_identity(h) { u } else { left[h.0][x.0].apply(u) },
        |y, f, u| if c.is_identity(f) { u } else { right[f.0][y.0].apply(u) },
    )
}

fn monoidal_from_doc(doc: &MonoidalDoc, c: Arc<FinCategory>) -> Result<StrictMonoidal, Error> {
    let (n, m) = (c.num_objects(), c.num_morphisms());
    let mut objs = vec![None; n * n];
    for [a, b, ab] in &doc.tensor {
        let (a, b, ab) = (c.object(a), c.object(b), c.object(ab));
        let (a, b, ab) = (a.map_err(unresolved)?, b.map_err(unresolved)?, ab.map_err(unresolved)?);
        objs[a.0 * n + b.0] = Some(ab);
    }
    let objs: Vec<Obj> = objs
        .into_iter()
        .enumerate()
        .map(|(i, o)| {
            o.ok_or_else(|| {
                Error::InvalidMonoidal(format!(
                    "no tensor given for ({}, {})",
                    c.object_name(Obj(i / n)),
                    c.object_name(Obj(i % n))
                ))
            })
        })
        .collect::<Result<_, _>>()?;
    let mut mors = vec![None; m * m];
    for [f, g, fg] in &doc.tensor_morphisms {
        let (f, g, fg) = (c.morphism(f), c.morphism(g), c.morphism(fg));
        let (f, g, fg) = (f.map_err(unresolved)?, g.map_err(unresolved)?, fg.map_err(unresolved)?);
        mors[f.0 * m + g.0] = Some(fg);
    }
    for f in c.morphisms().filter(|&f| c.is_identity(f)) {
        for g in c.morphisms().filter(|&g| c.is_identity(g)) {
            let slot = &mut mors[f.0 * m + g.0];
            if slot.is_none() {
                *slot = Some(c.id(objs[c.dom(f).0 * n + c.dom(g).0]));
            }
        }
    }
    let mors: Vec<Mor> = mors
        .into_iter()
        .enumerate()
        .map(|(i, f)| {
            f.ok_or_else(|| {
                Error::InvalidMonoidal(format!(
                    "no tensor given for ({}, {})",
                    c.mor_name(Mor(i / m)),
                    c.mor_name(Mor(i % m))
                ))
            })
        })
        .collect::<Result<_, _>>()?;
    let unit = c.object(&doc.unit).map_err(unresolved)?;
    StrictMonoidal::new(c, |a, b| objs[a.0 * n + b.0], |f, g| mors[f.0 * m + g.0], unit)
}

fn category_doc(c: &FinCategory) -> CategoryDoc {
    let raw = c.to_raw();
    CategoryDoc {
        kind: "category".into(),
        name: raw.name,
        objects: raw.objects,
        morphisms: raw
            .morphisms
            .into_iter()
            .map(|[name, dom, cod]| MorphismDoc { name, dom, cod })
            .collect(),
        identities: raw.identities.into_iter().map(|[o, i]| (o, i)).collect(),
        composition: raw.composition,
    }
}

fn functor_doc(f: &FunctorFile) -> FunctorDoc {
    let (s, t) = (f.functor.source(), f.functor.target());
    FunctorDoc {
        kind: "functor".into(),
        source: f.source.clone(),
        target: f.target.clone(),
        objects: s
            .objects()
            .map(|x| (s.object_name(x).to_string(), t.object_name(f.functor.ob(x)).to_string()))
            .collect(),
        morphisms: s
            .morphisms()
            .filter(|&g| !s.is_identity(g))
            .map(|g| (s.mor_name(g).to_string(), t.mor_name(f.functor.mor(g)).to_string()))
            .collect(),
    }
}

fn setfunctor_doc(f: &SetFunctorFile) -> SetFunctorDoc {
    let s = &f.functor;
    let c = s.base();
    SetFunctorDoc {
        kind: "setfunctor".into(),
        category: f.category.clone(),
        variance: match s.variance() {
            Variance::Covariant => VarianceDoc::Covariant,
            Variance::Contravariant => VarianceDoc::Contravariant,
        },
        sets: c
            .objects()
            .map(|x| (c.object_name(x).to_string(), s.set(x).elements().to_vec()))
            .collect(),
        actions: c
            .morphisms()
            .filter(|&g| !c.is_identity(g))
            .map(|g| {
                let (from, to) = s.action_ends(g);
                (c.mor_name(g).to_string(), function_to_map(s.action(g), s.set(from), s.set(to)))
            })
            .collect(),
    }
}

fn profunctor_doc(p: &ProfunctorFile) -> ProfunctorDoc {
    let phi = &p.profunctor;
    let (c, d) = (phi.source(), phi.target());
    let map_of = |from: &FinSet, to: &FinSet, act: &dyn Fn(usize) -> usize| -> Map<String> {
        (0..from.len()).map(|u| (from.element(u).to_string(), to.element(act(u)).to_string())).collect()
    };
    ProfunctorDoc {
        kind: "profunctor".into(),
        source: p.source.clone(),
        target: p.target.clone(),
        sets: d
            .objects()
            .map(|y| {
                let row = c
                    .objects()
                    .map(|x| (c.object_name(x).to_string(), phi.set(y, x).elements().to_vec()))
                    .collect();
                (d.object_name(y).to_string(), row)
            })
            .collect(),
        left: d
            .morphisms()
            .filter(|&h| !d.is_identity(h))
            .map(|h| {
                let per = c
                    .objects()
                    .map(|x| {
                        let m = map_of(phi.set(d.cod(h), x), phi.set(d.dom(h), x), &|u| phi.left(h, x, u));
                        (c.object_name(x).to_string(), m)
                    })
                    .collect();
                (d.mor_name(h).to_string(), per)
            })
            .collect(),
        right: c
            .morphisms()
            .filter(|&f| !c.is_identity(f))
            .map(|f| {
                let per = d
                    .objects()
                    .map(|y| {
                        let m = map_of(phi.set(y, c.dom(f)), phi.set(y, c.cod(f)), &|u| phi.right(y, f, u));
                        (d.object_name(y).to_string(), m)
                    })
                    .collect();
                (c.mor_name(f).to_string(), per)
            })
            .collect(),
    }
}

fn monoidal_doc(m: &MonoidalFile) -> MonoidalDoc {
    let mm = &m.monoidal;
    let c = mm.base();
    let mut tensor = Vec::new();
    for a in c.objects() {
        for b in c.objects() {
            let ab = mm.tensor(a, b);
            tensor.push([c.object_name(a), c.object_name(b), c.object_name(ab)].map(String::from));
        }
    }
    let mut tensor_morphisms = Vec::new();
    for f in c.morphisms() {
        for g in c.morphisms() {
            if c.is_identity(f) && c.is_identity(g) {
                continue;
            }
            let fg = mm.tensor_mor(f, g);
            tensor_morphisms.push([c.mor_name(f), c.mor_name(g), c.mor_name(fg)].map(String::from));
        }
    }
    MonoidalDoc {
        kind: "monoidal".into(),
        category: m.category.clone(),
        unit: c.object_name(mm.unit()).to_string(),
        tensor,
        tensor_morphisms,
    }
}

/// The canonical text of a category document.
pub fn category_text(c: &FinCategory) -> String {
    pretty(&category_doc(c))
}

pub fn setfunctor_text(f: &SetFunctorFile) -> String {
    pretty(&setfunctor_doc(f))
}

pub fn profunctor_text(p: &ProfunctorFile) -> String {
    pretty(&profunctor_doc(p))
}

/// The canonical text of any workspace value.
pub fn to_canonical(v: &Value) -> String {
    match v {
        Value::Category(c) => category_text(c),
        Value::Functor(f) => pretty(&functor_doc(f)),
        Value::SetFunctor(f) => setfunctor_text(f),
        Value::Profunctor(p) => profunctor_text(p),
        Value::Monoidal(m) => pretty(&monoidal_doc(m)),
        Value::WeightedDiagram(w) => pretty(&WeightedDiagramDoc {
            kind: "weighted-diagram".into(),
            diagram: w.diagram_path.clone(),
            weight: w.weight_path.clone(),
        }),
    }
}

const INLINE_WIDTH: usize = 80;

/// Two-space indented JSON in which short arrays and objects of scalars sit
/// on one line. Ends with a newline.
pub fn pretty(value: &impl Serialize) -> String {
    let v = serde_json::to_value(value).expect("documents serialize");
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    out
}

fn inline(v: &serde_json::Value) -> Option<String> {
    use serde_json::Value as J;
    let scalar = |v: &J| !matches!(v, J::Array(_) | J::Object(_));
    let text = match v {
        J::Array(items) if items.iter().all(scalar) => {
            let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
            format!("[{}]", parts.join(", "))
        }
        J::Object(map) if map.values().all(scalar) => {
            if map.is_empty() {
                return Some("{}".into());
            }
            let parts: Vec<String> = map.iter().map(|(k, x)| format!("{}: {}", J::String(k.clone()), x)).collect();
            format!("{{{}}}", parts.join(", "))
        }
        J::Array(_) | J::Object(_) => return None,
        other => return Some(other.to_string()),
    };
    (text.chars().count() <= INLINE_WIDTH).then_some(text)
}

fn write_value(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value as J;
    if let Some(text) = inline(v) {
        out.push_str(&text);
        return;
    }
    let pad = "  ".repeat(indent + 1);
    match v {
        J::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad);
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        J::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&J::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        _ => unreachable!("scalars are always inline"),
    }
}
