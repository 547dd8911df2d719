//! Stratification over literal patterns.
//!
//! A pattern is a predicate signature with its constant arguments kept and
//! its variables erased. Working at this granularity (instead of bare
//! predicate names) is what lets the sense-preference ladders, whose rules
//! mention `tree(X, plant)` under `not tree(X, diagram)`, be stratified.

use std::collections::HashMap;
use std::fmt;

use indexmap::IndexMap;

use super::{Atom, Program, Term};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    pub negated: bool,
    pub name: String,
    /// `Some(constant)` for ground positions, `None` for variables.
    pub args: Vec<Option<Term>>,
}

impl Pattern {
    pub fn of(atom: &Atom) -> Pattern {
        Pattern {
            negated: atom.negated,
            name: atom.predicate.clone(),
            args: atom.args.iter().map(|t| if t.is_var() { None } else { Some(t.clone()) }).collect(),
        }
    }

    /// Whether some ground atom matches both patterns.
    pub fn overlaps(&self, other: &Pattern) -> bool {
        self.negated == other.negated
            && self.name == other.name
            && self.args.len() == other.args.len()
            && self.args.iter().zip(&other.args).all(|(a, b)| match (a, b) {
                (Some(x), Some(y)) => x == y,
                _ => true,
            })
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("-")?;
        }
        f.write_str(&self.name)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                match a {
                    Some(t) => write!(f, "{t}")?,
                    None => f.write_str("_")?,
                }
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Stratum per pattern. Facts are listed once per signature, with every
/// argument erased.
#[derive(Clone, Debug, Default)]
pub struct Strata {
    by_pattern: IndexMap<Pattern, usize>,
}

impl Strata {
    /// Looks a pattern up by its display form, e.g. `"tree(_, plant)"`.
    pub fn get(&self, pattern: &str) -> Option<usize> {
        self.by_pattern.iter().find(|(p, _)| p.to_string() == pattern).map(|(_, s)| *s)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Pattern, usize)> {
        self.by_pattern.iter().map(|(p, s)| (p, *s))
    }

    pub fn max(&self) -> usize {
        self.by_pattern.values().copied().max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("program is not stratified: negation cycle through {}", cycle.join(" <-> "))]
pub struct StratificationError {
    pub cycle: Vec<String>,
}

/// Assigns strata so that positive dependencies never point to a higher
/// stratum and `not` dependencies point to a strictly lower one.
pub fn stratification_check(p: &Program) -> Result<Strata, StratificationError> {
    // Nodes: heads of proper rules first, then any other body pattern.
    let mut index: IndexMap<Pattern, ()> = IndexMap::new();
    let mut rule_heads: Vec<usize> = Vec::new();
    for rule in p.rules().iter().filter(|r| !r.body.is_empty()) {
        if let Some(h) = &rule.head {
            let (i, _) = index.insert_full(Pattern::of(h), ());
            if !rule_heads.contains(&i) {
                rule_heads.push(i);
            }
        }
    }
    // Facts are leaves; one variable-only node per fact signature suffices.
    for h in p.facts() {
        let mut pat = Pattern::of(h);
        pat.args.iter_mut().for_each(|a| *a = None);
        let (i, _) = index.insert_full(pat, ());
        if !rule_heads.contains(&i) {
            rule_heads.push(i);
        }
    }
    for rule in p.rules() {
        for l in &rule.body {
            index.insert_full(Pattern::of(&l.atom), ());
        }
    }
    let n = index.len();
    let pats: Vec<&Pattern> = index.keys().collect();

    // Edge u -> v (u depends on v), flagged when through `not`.
    let mut edges: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    let mut callee_cache: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut callees = |b: usize| -> Vec<usize> {
        callee_cache
            .entry(b)
            .or_insert_with(|| rule_heads.iter().copied().filter(|&h| pats[h].overlaps(pats[b])).collect())
            .clone()
    };
    for rule in p.rules().iter().filter(|r| !r.body.is_empty()) {
        let Some(h) = &rule.head else { continue };
        let u = index.get_index_of(&Pattern::of(h)).expect("indexed");
        for l in &rule.body {
            let b = index.get_index_of(&Pattern::of(&l.atom)).expect("indexed");
            for v in callees(b) {
                edges[u].push((v, l.naf));
            }
        }
    }
    // A body-only pattern depends positively on every head it overlaps.
    for b in 0..n {
        if !rule_heads.contains(&b) {
            for v in callees(b) {
                edges[b].push((v, false));
            }
        }
    }

    let sccs = tarjan(&edges);
    let mut comp = vec![0usize; n];
    for (ci, scc) in sccs.iter().enumerate() {
        for &v in scc {
            comp[v] = ci;
        }
    }
    // Tarjan yields components in reverse topological order: callees first.
    let mut stratum = vec![0usize; sccs.len()];
    for (ci, scc) in sccs.iter().enumerate() {
        let mut s = 0;
        for &u in scc {
            for &(v, neg) in &edges[u] {
                if comp[v] == ci {
                    if neg {
                        let mut cycle: Vec<String> = scc.iter().map(|&x| pats[x].to_string()).collect();
                        cycle.sort();
                        return Err(StratificationError { cycle });
                    }
                } else {
                    s = s.max(stratum[comp[v]] + usize::from(neg));
                }
            }
        }
        stratum[ci] = s;
    }
    let by_pattern = index.keys().enumerate().map(|(i, p)| (p.clone(), stratum[comp[i]])).collect();
    Ok(Strata { by_pattern })
}

fn tarjan(edges: &[Vec<(usize, bool)>]) -> Vec<Vec<usize>> {
    struct State<'a> {
        edges: &'a [Vec<(usize, bool)>],
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next: usize,
        out: Vec<Vec<usize>>,
    }

    // Iterative to keep deep rule chains off the call stack.
    fn visit(st: &mut State<'_>, root: usize) {
        let mut work: Vec<(usize, usize)> = vec![(root, 0)];
        st.index[root] = Some(st.next);
        st.low[root] = st.next;
        st.next += 1;
        st.stack.push(root);
        st.on_stack[root] = true;
        while let Some(&mut (v, ref mut ei)) = work.last_mut() {
            if let Some(&(w, _)) = st.edges[v].get(*ei) {
                *ei += 1;
                match st.index[w] {
                    None => {
                        st.index[w] = Some(st.next);
                        st.low[w] = st.next;
                        st.next += 1;
                        st.stack.push(w);
                        st.on_stack[w] = true;
                        work.push((w, 0));
                    }
                    Some(wi) if st.on_stack[w] => st.low[v] = st.low[v].min(wi),
                    Some(_) => {}
                }
            } else {
                work.pop();
                if let Some(&(parent, _)) = work.last() {
                    st.low[parent] = st.low[parent].min(st.low[v]);
                }
                if Some(st.low[v]) == st.index[v] {
                    let mut scc = Vec::new();
                    while let Some(w) = st.stack.pop() {
                        st.on_stack[w] = false;
                        scc.push(w);
                        if w == v {
                            break;
                        }
                    }
                    st.out.push(scc);
                }
            }
        }
    }

    let n = edges.len();
    let mut st = State {
        edges,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next: 0,
        out: Vec::new(),
    };
    for v in 0..n {
        if st.index[v].is_none() {
            visit(&mut st, v);
        }
    }
    st.out
}
