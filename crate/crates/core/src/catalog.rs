//! Small named categories and seeded random generators used by tests,
//! examples and the command-line fixtures.

use std::collections::HashMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::{discrete, CategoryBuilder, FinCategory, Obj};
use crate::set::FinSet;
use crate::setfunctor::{SetFunctor, Variance};

/// The terminal category: one object `*`, one identity.
pub fn one() -> FinCategory {
    discrete("One", &["*"]).expect("valid")
}

/// Two objects, identities only.
pub fn pair() -> FinCategory {
    discrete("Pair", &["0", "1"]).expect("valid")
}

/// The arrow category `0 --a--> 1`.
pub fn arr() -> FinCategory {
    let mut b = CategoryBuilder::new("Arr");
    let x = b.object("0");
    let y = b.object("1");
    let i0 = b.identity("id_0", x);
    let i1 = b.identity("id_1", y);
    b.morphism("a", x, y);
    b.compose_all(|g, f| if g == i1 || g == i0 { f } else { g });
    b.finish().expect("valid")
}

/// Two parallel arrows `a, b: 0 → 1`.
pub fn par_pair() -> FinCategory {
    let mut b = CategoryBuilder::new("ParPair");
    let x = b.object("0");
    let y = b.object("1");
    let i0 = b.identity("id_0", x);
    let i1 = b.identity("id_1", y);
    b.morphism("a", x, y);
    b.morphism("b", x, y);
    b.compose_all(|g, f| if g == i1 || g == i0 { f } else { g });
    b.finish().expect("valid")
}

/// One object `x` with an idempotent `e`.
pub fn idem() -> FinCategory {
    let mut b = CategoryBuilder::new("Idem");
    let x = b.object("x");
    let id = b.identity("id_x", x);
    let e = b.morphism("e", x, x);
    b.compose_all(|g, f| if g == id { f } else if f == id { g } else { e });
    b.finish().expect("valid")
}

/// The walking split idempotent: `i: s → x`, `p: x → s`, `p∘i = id_s`,
/// `e = i∘p`.
pub fn split_idem() -> FinCategory {
    let mut b = CategoryBuilder::new("SplitIdem");
    let s = b.object("s");
    let x = b.object("x");
    let ids = b.identity("id_s", s);
    let idx = b.identity("id_x", x);
    let i = b.morphism("i", s, x);
    let p = b.morphism("p", x, s);
    let e = b.morphism("e", x, x);
    b.compose_all(|g, f| match (g, f) {
        (g, f) if f == ids || f == idx => g,
        (g, f) if g == ids || g == idx => f,
        (g, f) if g == p && f == i => ids,
        (g, f) if g == i && f == p => e,
        (g, f) if g == e && f == i => i,
        (g, f) if g == p && f == e => p,
        _ => e,
    });
    b.finish().expect("valid")
}

/// The poset `0 ≤ 1`, with the non-identity arrow named `le`.
pub fn poset01() -> FinCategory {
    let mut b = CategoryBuilder::new("Poset01");
    let x = b.object("0");
    let y = b.object("1");
    let i0 = b.identity("id_0", x);
    let i1 = b.identity("id_1", y);
    b.morphism("le", x, y);
    b.compose_all(|g, f| if g == i1 || g == i0 { f } else { g });
    b.finish().expect("valid")
}

/// The cyclic group of order `n` as a one-object category; `g^k` is named
/// `g` for `k = 1` and `gk` otherwise.
pub fn cyclic(n: usize) -> FinCategory {
    let mut b = CategoryBuilder::new(format!("Z{n}"));
    let o = b.object("*");
    let names: Vec<String> = (0..n)
        .map(|k| match k {
            0 => "id_*".to_string(),
            1 => "g".to_string(),
            _ => format!("g{k}"),
        })
        .collect();
    let ms: Vec<usize> = names.iter().map(|nm| b.morphism(nm.clone(), o, o)).collect();
    b.set_identity(o, ms[0]);
    b.compose_all(|g, f| ms[(g + f) % n]);
    b.finish().expect("valid")
}

pub fn z2() -> FinCategory {
    cyclic(2)
}

pub fn z3() -> FinCategory {
    cyclic(3)
}

/// Discrete category with objects `I, A`, the base of the monoidal `Z2disc`.
pub fn z2disc() -> FinCategory {
    discrete("Z2disc", &["A", "I"]).expect("valid")
}

/// Discrete category with objects `0, 1, 2`, the base of the monoidal `Z3disc`.
pub fn z3disc() -> FinCategory {
    discrete("Z3disc", &["0", "1", "2"]).expect("valid")
}

/// The full subcategory of finite sets on `{0..n}` for each `n` in `sizes`.
///
/// Objects are named `s<n>`; a function `f: s<m> → s<n>` is named
/// `s<m>s<n>[images]`, for example `s2s1[00]`.
pub fn finite_sets(sizes: &[usize]) -> FinCategory {
    let label = sizes.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",");
    let mut b = CategoryBuilder::new(format!("FinSet{{{label}}}"));
    let objs: Vec<usize> = sizes.iter().map(|n| b.object(format!("s{n}"))).collect();
    let mut tables: Vec<Vec<usize>> = Vec::new();
    let mut index: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
    for (i, &m) in sizes.iter().enumerate() {
        for (j, &n) in sizes.iter().enumerate() {
            for table in all_functions(m, n) {
                let images: String = table.iter().map(|d| d.to_string()).collect();
                let f = b.morphism(format!("s{m}s{n}[{images}]"), objs[i], objs[j]);
                if i == j && table.iter().enumerate().all(|(k, &v)| k == v) {
                    b.set_identity(objs[i], f);
                }
                index.insert((i, j, table.clone()), f);
                tables.push(table);
            }
        }
    }
    let dom_of: Vec<usize> = (0..b.num_morphisms()).map(|f| b.dom(f)).collect();
    let cod_of: Vec<usize> = (0..b.num_morphisms()).map(|f| b.cod(f)).collect();
    b.compose_all(|g, f| {
        let t: Vec<usize> = tables[f].iter().map(|&x| tables[g][x]).collect();
        index[&(dom_of[f], cod_of[g], t)]
    });
    b.finish().expect("valid")
}

/// Every total function `{0..m} → {0..n}` as an image table, in
/// lexicographic order.
pub(crate) fn all_functions(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        let mut next = Vec::new();
        for t in &out {
            for v in 0..n {
                let mut t2 = t.clone();
                t2.push(v);
                next.push(t2);
            }
        }
        out = next;
    }
    if m > 0 && n == 0 {
        out.clear();
    }
    out
}

/// The fixed part of the catalog.
pub fn fixed() -> Vec<FinCategory> {
    vec![
        one(),
        pair(),
        arr(),
        par_pair(),
        idem(),
        split_idem(),
        poset01(),
        z2(),
        z3(),
        z2disc(),
        z3disc(),
    ]
}

/// A random finite category with at most 4 objects and 12 morphisms.
///
/// Even seeds give concrete categories (closures of random functions
/// between small sets); odd seeds give random preorders. Morphisms are named
/// `m<k>`, identities `id_<object>`.
pub fn random_category(seed: u64) -> FinCategory {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let c = if seed % 2 == 1 {
            Some(random_preorder(&mut rng, seed))
        } else {
            try_concrete(&mut rng, seed)
        };
        if let Some(c) = c.filter(|c| c.num_morphisms() <= 12) {
            return c;
        }
    }
}

fn random_preorder(rng: &mut ChaCha8Rng, seed: u64) -> FinCategory {
    let n = rng.gen_range(1..=4);
    let mut rel = vec![vec![false; n]; n];
    for (i, row) in rel.iter_mut().enumerate() {
        row[i] = true;
    }
    for (i, row) in rel.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            if i != j && rng.gen_bool(0.35) {
                *cell = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if rel[i][k] && rel[k][j] {
                    rel[i][j] = true;
                }
            }
        }
    }
    let mut b = CategoryBuilder::new(format!("Random{seed}"));
    let objs: Vec<usize> = (0..n).map(|i| b.object(format!("o{i}"))).collect();
    let mut arrow = vec![vec![usize::MAX; n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in 0..n {
            if rel[i][j] {
                arrow[i][j] = if i == j {
                    b.identity(format!("id_o{i}"), objs[i])
                } else {
                    k += 1;
                    b.morphism(format!("m{k}"), objs[i], objs[j])
                };
            }
        }
    }
    let ends: Vec<(usize, usize)> = (0..b.num_morphisms()).map(|f| (b.dom(f), b.cod(f))).collect();
    b.compose_all(|g, f| arrow[ends[f].0][ends[g].1]);
    b.finish().expect("preorders are categories")
}

fn try_concrete(rng: &mut ChaCha8Rng, seed: u64) -> Option<FinCategory> {
    let n = rng.gen_range(1..=4);
    let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    // Morphisms are (dom, cod, table); identities first.
    let mut mors: Vec<(usize, usize, Vec<usize>)> = (0..n).map(|i| (i, i, (0..sizes[i]).collect())).collect();
    let gens = rng.gen_range(1..=4);
    for _ in 0..gens {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        let t: Vec<usize> = (0..sizes[i]).map(|_| rng.gen_range(0..sizes[j])).collect();
        if !mors.contains(&(i, j, t.clone())) {
            mors.push((i, j, t));
        }
    }
    // Close under composition.
    let mut changed = true;
    while changed {
        changed = false;
        let len = mors.len();
        for g in 0..len {
            for f in 0..len {
                if mors[f].1 == mors[g].0 {
                    let t: Vec<usize> = mors[f].2.iter().map(|&x| mors[g].2[x]).collect();
                    let h = (mors[f].0, mors[g].1, t);
                    if !mors.contains(&h) {
                        mors.push(h);
                        changed = true;
                    }
                }
            }
        }
        if mors.len() > 12 {
            return None;
        }
    }
    let mut b = CategoryBuilder::new(format!("Random{seed}"));
    let objs: Vec<usize> = (0..n).map(|i| b.object(format!("o{i}"))).collect();
    for (k, (i, j, _)) in mors.iter().enumerate() {
        if k < n {
            b.identity(format!("id_o{i}"), objs[*i]);
        } else {
            b.morphism(format!("m{}", k - n + 1), objs[*i], objs[*j]);
        }
    }
    b.compose_all(|g, f| {
        let t: Vec<usize> = mors[f].2.iter().map(|&x| mors[g].2[x]).collect();
        mors.iter()
            .position(|m| m.0 == mors[f].0 && m.1 == mors[g].1 && m.2 == t)
            .expect("closed")
    });
    Some(b.finish().expect("concrete categories satisfy the laws"))
}

/// `count` random categories from consecutive seeds starting at `seed`.
pub fn random_categories(seed: u64, count: usize) -> Vec<FinCategory> {
    (0..count as u64).map(|k| random_category(seed + k)).collect()
}

/// A random set functor whose sets have at most `max_size` elements.
///
/// Each result is a coproduct of quotients of representables (or the empty
/// or a constant functor), so functoriality holds by construction.
pub fn random_set_functor(c: &Arc<FinCategory>, variance: Variance, max_size: usize, rng: &mut impl Rng) -> SetFunctor {
    loop {
        let kind = rng.gen_range(0..10);
        let candidate = match kind {
            0 => SetFunctor::empty(c.clone(), variance),
            1 => {
                let k = rng.gen_range(1..=max_size.max(1));
                let set = FinSet::new("K", (0..k).map(|i| format!("k{i}"))).expect("distinct");
                SetFunctor::constant(c.clone(), variance, set)
            }
            _ => {
                let summands = if kind < 8 { 1 } else { 2 };
                let parts: Vec<SetFunctor> = (0..summands)
                    .map(|_| {
                        let x = Obj(rng.gen_range(0..c.num_objects().max(1)));
                        random_quotient_of_hom(c, x, variance, rng)
                    })
                    .collect();
                coproduct(&parts)
            }
        };
        if c.objects().all(|x| candidate.set(x).len() <= max_size) {
            return candidate;
        }
    }
}

/// A quotient of `hom(x, −)` (or `hom(−, x)`) by the congruence generated by
/// a few random identifications.
fn random_quotient_of_hom(c: &Arc<FinCategory>, x: Obj, variance: Variance, rng: &mut impl Rng) -> SetFunctor {
    let hom = crate::setfunctor::hom_functor(c, x, variance);
    let offsets: Vec<usize> = c
        .objects()
        .scan(0, |acc, a| {
            let o = *acc;
            *acc += hom.set(a).len();
            Some(o)
        })
        .collect();
    let total: usize = c.objects().map(|a| hom.set(a).len()).sum();
    let mut uf = UnionFind::<usize>::new(total);
    let glue = rng.gen_range(0..=2);
    for _ in 0..glue {
        let a = Obj(rng.gen_range(0..c.num_objects()));
        let n = hom.set(a).len();
        if n >= 2 {
            let mut picks: Vec<usize> = (0..n).collect();
            picks.shuffle(rng);
            uf.union(offsets[a.0] + picks[0], offsets[a.0] + picks[1]);
        }
    }
    // Close under the action.
    let mut changed = true;
    while changed {
        changed = false;
        for f in c.morphisms() {
            let (src, dst) = hom.action_ends(f);
            let act = hom.action(f);
            for u in 0..hom.set(src).len() {
                for v in (u + 1)..hom.set(src).len() {
                    if uf.equiv(offsets[src.0] + u, offsets[src.0] + v) {
                        let (fu, fv) = (offsets[dst.0] + act.apply(u), offsets[dst.0] + act.apply(v));
                        if !uf.equiv(fu, fv) {
                            uf.union(fu, fv);
                            changed = true;
                        }
                    }
                }
            }
        }
    }
    hom.quotient(|a, u| uf.find(offsets[a.0] + u))
}

fn coproduct(parts: &[SetFunctor]) -> SetFunctor {
    let mut acc = parts[0].clone();
    for p in &parts[1..] {
        acc = acc.coproduct(p).expect("same base");
    }
    acc
}
