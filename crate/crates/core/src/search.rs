//! A small finite-domain constraint solver.
//!
//! Nearly every enumeration in the crate (natural transformations, limit
//! tuples, wedges, weighted cones) is a search for assignments satisfying
//! binary constraints of the form `fa(x_a) = fb(x_b)`, where `fa` and `fb`
//! are lookup tables. Forward checking on such constraints collapses most
//! domains to singletons as soon as one variable is fixed.

use std::rc::Rc;

use crate::cap::Budget;
use crate::error::Result;

/// Sentinel for "undefined" entries in a lookup table; never matches.
pub(crate) const UNDEF: usize = usize::MAX;

/// Lookup table applied to a variable's value; `None` is the identity.
pub(crate) type Table = Option<Rc<Vec<usize>>>;

#[derive(Debug, Clone)]
struct Link {
    a: usize,
    fa: Table,
    b: usize,
    fb: Table,
}

fn eval(t: &Table, x: usize) -> usize {
    match t {
        None => x,
        Some(t) => t.get(x).copied().unwrap_or(UNDEF),
    }
}

#[derive(Debug, Clone, Default)]
pub(crate) struct Csp {
    domains: Vec<Vec<usize>>,
    links: Vec<Link>,
    groups: Vec<Vec<usize>>,
    var_links: Vec<Vec<usize>>,
    var_groups: Vec<Vec<usize>>,
}

struct State {
    dom: Vec<Vec<usize>>,
    assign: Vec<Option<usize>>,
    trail: Vec<(usize, Vec<usize>)>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    All,
    First,
}

impl Csp {
    pub(crate) fn new(domains: Vec<Vec<usize>>) -> Self {
        let n = domains.len();
        Csp {
            domains,
            links: Vec::new(),
            groups: Vec::new(),
            var_links: vec![Vec::new(); n],
            var_groups: vec![Vec::new(); n],
        }
    }

    /// Requires `fa(x_a) == fb(x_b)`.
    pub(crate) fn link(&mut self, a: usize, fa: Table, b: usize, fb: Table) {
        let id = self.links.len();
        self.links.push(Link { a, fa, b, fb });
        self.var_links[a].push(id);
        if b != a {
            self.var_links[b].push(id);
        }
    }

    /// Requires the variables to take pairwise distinct values.
    pub(crate) fn distinct(&mut self, vars: Vec<usize>) {
        let id = self.groups.len();
        for &v in &vars {
            self.var_groups[v].push(id);
        }
        self.groups.push(vars);
    }

    /// All solutions, sorted lexicographically by variable index.
    pub(crate) fn solve_all(&self) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        self.run(Mode::All, &mut out)?;
        out.sort();
        Ok(out)
    }

    /// The lexicographically least solution, if any.
    pub(crate) fn solve_first(&self) -> Result<Option<Vec<usize>>> {
        let mut out = Vec::new();
        self.run(Mode::First, &mut out)?;
        Ok(out.pop())
    }

    fn run(&self, mode: Mode, out: &mut Vec<Vec<usize>>) -> Result<()> {
        let mut dom = self.domains.clone();
        // Self-links are unary constraints.
        for l in &self.links {
            if l.a == l.b {
                dom[l.a].retain(|&x| {
                    let y = eval(&l.fa, x);
                    y != UNDEF && y == eval(&l.fb, x)
                });
            }
        }
        if dom.iter().any(Vec::is_empty) {
            return Ok(());
        }
        let mut state = State {
            dom,
            assign: vec![None; self.domains.len()],
            trail: Vec::new(),
        };
        let mut budget = Budget::new();
        self.descend(&mut state, mode, out, &mut budget)?;
        Ok(())
    }

    fn pick(&self, state: &State, mode: Mode) -> Option<usize> {
        match mode {
            Mode::First => state.assign.iter().position(Option::is_none),
            Mode::All => (0..state.assign.len())
                .filter(|&v| state.assign[v].is_none())
                .min_by_key(|&v| (state.dom[v].len(), v)),
        }
    }

    fn descend(
        &self,
        state: &mut State,
        mode: Mode,
        out: &mut Vec<Vec<usize>>,
        budget: &mut Budget,
    ) -> Result<bool> {
        let Some(v) = self.pick(state, mode) else {
            out.push(state.assign.iter().map(|x| x.unwrap()).collect());
            budget.charge(1)?;
            return Ok(mode == Mode::First);
        };
        let candidates = state.dom[v].clone();
        for val in candidates {
            budget.charge(1)?;
            let mark = state.trail.len();
            state.assign[v] = Some(val);
            if self.propagate(state, v, val) && self.descend(state, mode, out, budget)? {
                return Ok(true);
            }
            state.assign[v] = None;
            while state.trail.len() > mark {
                let (u, old) = state.trail.pop().unwrap();
                state.dom[u] = old;
            }
        }
        Ok(false)
    }

    fn narrow(state: &mut State, u: usize, keep: impl Fn(usize) -> bool) -> bool {
        let filtered: Vec<usize> = state.dom[u].iter().copied().filter(|&x| keep(x)).collect();
        if filtered.len() != state.dom[u].len() {
            let old = std::mem::replace(&mut state.dom[u], filtered);
            state.trail.push((u, old));
        }
        !state.dom[u].is_empty()
    }

    fn propagate(&self, state: &mut State, v: usize, val: usize) -> bool {
        for &lid in &self.var_links[v] {
            let l = &self.links[lid];
            if l.a == l.b {
                continue;
            }
            let (other, mine, theirs) = if l.a == v {
                (l.b, &l.fa, &l.fb)
            } else {
                (l.a, &l.fb, &l.fa)
            };
            let key = eval(mine, val);
            if key == UNDEF {
                return false;
            }
            match state.assign[other] {
                Some(x) => {
                    if eval(theirs, x) != key {
                        return false;
                    }
                }
                None => {
                    if !Self::narrow(state, other, |x| eval(theirs, x) == key) {
                        return false;
                    }
                }
            }
        }
        for &gid in &self.var_groups[v] {
            for &u in &self.groups[gid] {
                if u == v {
                    continue;
                }
                match state.assign[u] {
                    Some(x) if x == val => return false,
                    Some(_) => {}
                    None => {
                        if !Self::narrow(state, u, |x| x != val) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cap::with_size_cap;
    use crate::error::Error;

    fn table(v: Vec<usize>) -> Table {
        Some(Rc::new(v))
    }

    #[test]
    fn unconstrained_product() {
        let csp = Csp::new(vec![vec![0, 1], vec![0, 1, 2]]);
        let all = csp.solve_all().unwrap();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[5], vec![1, 2]);
    }

    #[test]
    fn functional_links_prune() {
        // x1 = swap(x0) over {0,1}; x0 fixed point of swap: none.
        let mut csp = Csp::new(vec![vec![0, 1], vec![0, 1]]);
        csp.link(0, table(vec![1, 0]), 1, None);
        assert_eq!(csp.solve_all().unwrap().len(), 2);
        csp.link(0, table(vec![1, 0]), 0, None);
        assert_eq!(csp.solve_all().unwrap().len(), 0);
    }

    #[test]
    fn distinct_groups_give_permutations() {
        let mut csp = Csp::new(vec![vec![0, 1, 2]; 3]);
        csp.distinct(vec![0, 1, 2]);
        assert_eq!(csp.solve_all().unwrap().len(), 6);
        assert_eq!(csp.solve_first().unwrap(), Some(vec![0, 1, 2]));
    }

    #[test]
    fn empty_problem_has_one_solution() {
        assert_eq!(Csp::new(vec![]).solve_all().unwrap(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn cap_is_enforced() {
        let csp = Csp::new(vec![vec![0, 1, 2, 3]; 6]);
        let r = with_size_cap(100, || csp.solve_all());
        assert!(matches!(r, Err(Error::SizeExceeded { .. })));
    }
}
