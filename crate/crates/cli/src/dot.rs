//! DOT rendering of extension categories, weighted cones and collages.
//!
//! Base morphisms are solid edges, virtual arrows and heteromorphisms are
//! dashed, and an extra object is drawn as a point. Identities are omitted.
//! Nodes and edges are emitted in sorted order so that output is stable.

use std::collections::BTreeSet;

use fincat::cones::{WeightedCone, WeightedDiagram};
use fincat::extend::Extension;
use fincat::profunctor::Collage;
use fincat::FinCategory;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Node {
    id: String,
    label: Option<String>,
    point: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Edge {
    from: String,
    to: String,
    label: String,
    dashed: bool,
}

#[derive(Debug, Default)]
struct Graph {
    nodes: BTreeSet<Node>,
    edges: BTreeSet<Edge>,
}

impl Graph {
    fn node(&mut self, id: &str) {
        self.nodes.insert(Node {
            id: id.to_string(),
            label: None,
            point: false,
        });
    }

    fn edge(&mut self, from: &str, to: &str, label: &str, dashed: bool) {
        self.edges.insert(Edge {
            from: from.to_string(),
            to: to.to_string(),
            label: label.to_string(),
            dashed,
        });
    }

    fn render(&self, name: &str) -> String {
        let mut out = format!("digraph {} {{\n  rankdir=LR;\n", quote(name));
        for n in &self.nodes {
            let mut attrs = Vec::new();
            if let Some(l) = &n.label {
                attrs.push(format!("label={}", quote(l)));
            }
            if n.point {
                attrs.push("shape=point".to_string());
                attrs.push(format!("xlabel={}", quote(&n.id)));
            }
            out.push_str(&format!("  {}", quote(&n.id)));
            if !attrs.is_empty() {
                out.push_str(&format!(" [{}]", attrs.join(", ")));
            }
            out.push_str(";\n");
        }
        for e in &self.edges {
            let style = if e.dashed { ", style=dashed" } else { "" };
            out.push_str(&format!(
                "  {} -> {} [label={}{}];\n",
                quote(&e.from),
                quote(&e.to),
                quote(&e.label),
                style
            ));
        }
        out.push_str("}\n");
        out
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn base_edges(g: &mut Graph, c: &FinCategory, skip: impl Fn(fincat::Mor) -> bool) {
    for f in c.morphisms().filter(|&f| !c.is_identity(f) && !skip(f)) {
        g.edge(c.object_name(c.dom(f)), c.object_name(c.cod(f)), c.mor_name(f), false);
    }
}

/// `C^{+S}` or `C_{+S}`: virtual arrows dashed, the extra object a point.
pub fn extension_dot(ext: &Extension) -> String {
    let c = ext.category();
    let mut g = Graph::default();
    for x in c.objects() {
        let id = c.object_name(x).to_string();
        g.nodes.insert(Node {
            id,
            label: None,
            point: x == ext.extra(),
        });
    }
    base_edges(&mut g, c, |f| ext.is_virtual(f));
    for f in c.morphisms().filter(|&f| ext.is_virtual(f)) {
        g.edge(c.object_name(c.dom(f)), c.object_name(c.cod(f)), c.mor_name(f), true);
    }
    g.render(c.name())
}

/// A weighted cone drawn over the shape: one node per object `J` labeled
/// with `D J`, solid edges `D f`, and a dashed leg per weight element.
pub fn cone_dot(wd: &WeightedDiagram, cone: &WeightedCone) -> String {
    let (j, c) = (wd.shape(), wd.category());
    let d = &wd.diagram;
    let tip = format!("{} (tip)", c.object_name(cone.tip));
    let mut g = Graph::default();
    for x in j.objects() {
        g.nodes.insert(Node {
            id: j.object_name(x).to_string(),
            label: Some(format!("{}: {}", j.object_name(x), c.object_name(d.ob(x)))),
            point: false,
        });
    }
    g.nodes.insert(Node {
        id: tip.clone(),
        label: None,
        point: true,
    });
    for f in j.morphisms().filter(|&f| !j.is_identity(f)) {
        g.edge(j.object_name(j.dom(f)), j.object_name(j.cod(f)), c.mor_name(d.mor(f)), false);
    }
    for x in j.objects() {
        for (w, &leg) in cone.legs[x.0].iter().enumerate() {
            let label = format!("{}: {}", wd.weight.set(x).element(w), c.mor_name(leg));
            if wd.is_limit() {
                g.edge(&tip, j.object_name(x), &label, true);
            } else {
                g.edge(j.object_name(x), &tip, &label, true);
            }
        }
    }
    g.render(&format!("cone over {}", c.name()))
}

/// The collage of a profunctor, heteromorphisms dashed.
pub fn collage_dot(col: &Collage) -> String {
    let c = &col.category;
    let mut g = Graph::default();
    for x in c.objects() {
        g.node(c.object_name(x));
    }
    let het = |f: fincat::Mor| c.mor_name(f).starts_with("het:");
    base_edges(&mut g, c, het);
    for f in c.morphisms().filter(|&f| het(f)) {
        g.edge(c.object_name(c.dom(f)), c.object_name(c.cod(f)), c.mor_name(f), true);
    }
    g.render(c.name())
}

/// A plain category, identities omitted.
pub fn category_dot(c: &FinCategory) -> String {
    let mut g = Graph::default();
    for x in c.objects() {
        g.node(c.object_name(x));
    }
    base_edges(&mut g, c, |_| false);
    g.render(c.name())
}
