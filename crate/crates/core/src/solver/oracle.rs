//! Brute-force stable models over a relevant grounding. Independent of the
//! tabled engine; used as a test oracle.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::ir::{Atom, Program, Term};

/// Default bound on the number of non-fact ground atoms enumerated.
pub const DEFAULT_ATOM_BUDGET: usize = 20;

pub type Model = BTreeSet<Atom>;

/// A ground rule. `neg` atoms may keep `_` positions, read as "no
/// matching atom".
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundRule {
    pub head: Option<Atom>,
    pub pos: Vec<Atom>,
    pub neg: Vec<Atom>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{atoms} ground atoms exceed the budget of {budget} and the grounding is not stratified")]
    BudgetExceeded { atoms: usize, budget: usize },
}

type Subst = HashMap<String, Term>;

fn match_atom(pattern: &Atom, ground: &Atom, s: &mut Subst) -> bool {
    if pattern.predicate != ground.predicate || pattern.negated != ground.negated || pattern.args.len() != ground.args.len() {
        return false;
    }
    for (p, g) in pattern.args.iter().zip(&ground.args) {
        match p {
            Term::Var(v) if v == "_" => {}
            Term::Var(v) => match s.get(v) {
                Some(b) if b != g => return false,
                Some(_) => {}
                None => {
                    s.insert(v.clone(), g.clone());
                }
            },
            c if c != g => return false,
            _ => {}
        }
    }
    true
}

fn apply(a: &Atom, s: &Subst) -> Atom {
    let args = a
        .args
        .iter()
        .map(|t| match t {
            Term::Var(v) => s.get(v).cloned().unwrap_or_else(|| t.clone()),
            c => c.clone(),
        })
        .collect();
    Atom { predicate: a.predicate.clone(), args, negated: a.negated }
}

/// All substitutions that map `pos` into `known`.
fn joins(pos: &[&Atom], known: &[Atom], s: Subst, out: &mut Vec<Subst>) {
    let Some((first, rest)) = pos.split_first() else {
        out.push(s);
        return;
    };
    for g in known {
        let mut t = s.clone();
        if match_atom(first, g, &mut t) {
            joins(rest, known, t, out);
        }
    }
}

/// Gives each `_` of a positive literal its own variable so the ground
/// instance records the matched atom.
fn name_anonymous(a: &Atom, fresh: &mut usize) -> Atom {
    let args = a
        .args
        .iter()
        .map(|t| {
            if t.is_anon() {
                *fresh += 1;
                Term::var(format!("_{fresh}"))
            } else {
                t.clone()
            }
        })
        .collect();
    Atom { predicate: a.predicate.clone(), args, negated: a.negated }
}

/// Instantiates every rule over the atoms that could possibly be true
/// (a fixpoint that ignores `not`).
pub fn ground_program(p: &Program) -> Vec<GroundRule> {
    let mut known: Vec<Atom> = Vec::new();
    let mut seen_atoms: HashSet<Atom> = HashSet::new();
    let mut rules: Vec<GroundRule> = Vec::new();
    let mut seen_rules: HashSet<GroundRule> = HashSet::new();
    loop {
        let before = (known.len(), rules.len());
        for r in p.rules() {
            let mut fresh = 0;
            let named: Vec<Atom> = r.body.iter().filter(|l| !l.naf).map(|l| name_anonymous(&l.atom, &mut fresh)).collect();
            let pos: Vec<&Atom> = named.iter().collect();
            let mut subs = Vec::new();
            joins(&pos, &known, Subst::new(), &mut subs);
            for s in subs {
                let g = GroundRule {
                    head: r.head.as_ref().map(|h| apply(h, &s)),
                    pos: pos.iter().map(|a| apply(a, &s)).collect(),
                    neg: r.body.iter().filter(|l| l.naf).map(|l| apply(&l.atom, &s)).collect(),
                };
                if let Some(h) = &g.head {
                    if seen_atoms.insert(h.clone()) {
                        known.push(h.clone());
                    }
                }
                if seen_rules.insert(g.clone()) {
                    rules.push(g);
                }
            }
        }
        if (known.len(), rules.len()) == before {
            return rules;
        }
    }
}

/// Ground rules over atom ids.
struct Indexed {
    atoms: Vec<Atom>,
    facts: Vec<bool>,
    /// (head or None, positive ids, ids any of which blocks the rule)
    rules: Vec<(Option<usize>, Vec<usize>, Vec<usize>)>,
}

fn index(rules: &[GroundRule]) -> Indexed {
    let mut ids: HashMap<Atom, usize> = HashMap::new();
    let mut atoms: Vec<Atom> = Vec::new();
    let mut id = |a: &Atom, atoms: &mut Vec<Atom>| {
        *ids.entry(a.clone()).or_insert_with(|| {
            atoms.push(a.clone());
            atoms.len() - 1
        })
    };
    let heads: Vec<Option<usize>> = rules.iter().map(|r| r.head.as_ref().map(|h| id(h, &mut atoms))).collect();
    let mut facts = vec![false; atoms.len()];
    for (r, h) in rules.iter().zip(&heads) {
        if let (Some(h), true, true) = (h, r.pos.is_empty(), r.neg.is_empty()) {
            facts[*h] = true;
        }
    }
    let out = rules
        .iter()
        .zip(&heads)
        .map(|(r, &h)| {
            // Positive atoms are always derivable heads; anything else can
            // never hold and makes the rule dead.
            let pos: Option<Vec<usize>> = r.pos.iter().map(|a| atoms.iter().position(|b| b == a)).collect();
            let neg: Vec<usize> = r
                .neg
                .iter()
                .flat_map(|n| {
                    let n = n.clone();
                    atoms.iter().enumerate().filter(move |(_, a)| match_atom(&n, a, &mut Subst::new())).map(|(i, _)| i)
                })
                .collect();
            (h, pos, neg)
        })
        .filter_map(|(h, pos, neg)| pos.map(|p| (h, p, neg)))
        .collect();
    Indexed { atoms, facts, rules: out }
}

impl Indexed {
    /// Least model of the reduct with respect to `m`.
    fn reduct_least_model(&self, m: &[bool]) -> Vec<bool> {
        let mut lm = self.facts.clone();
        loop {
            let mut changed = false;
            for (h, pos, neg) in &self.rules {
                let Some(h) = *h else { continue };
                if !lm[h] && neg.iter().all(|&n| !m[n]) && pos.iter().all(|&p| lm[p]) {
                    lm[h] = true;
                    changed = true;
                }
            }
            if !changed {
                return lm;
            }
        }
    }

    fn acceptable(&self, m: &[bool]) -> bool {
        let violated = self.rules.iter().any(|(h, pos, neg)| {
            h.is_none() && pos.iter().all(|&p| m[p]) && neg.iter().all(|&n| !m[n])
        });
        let contradictory = (0..self.atoms.len()).any(|i| {
            m[i] && self.atoms[i].negated && {
                let c = self.atoms[i].complement();
                self.atoms.iter().position(|a| *a == c).is_some_and(|j| m[j])
            }
        });
        !violated && !contradictory
    }

    fn model(&self, m: &[bool]) -> Model {
        self.atoms.iter().zip(m).filter(|(_, &b)| b).map(|(a, _)| a.clone()).collect()
    }

    /// Perfect model by ground SCCs, or `None` when a `not` edge stays
    /// inside a component.
    fn stratified_model(&self) -> Option<Vec<bool>> {
        let n = self.atoms.len();
        let mut edges: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
        for (h, pos, neg) in &self.rules {
            let Some(h) = *h else { continue };
            edges[h].extend(pos.iter().map(|&p| (p, false)));
            edges[h].extend(neg.iter().map(|&q| (q, true)));
        }
        let comps = tarjan(&edges);
        let mut comp_of = vec![0; n];
        for (c, members) in comps.iter().enumerate() {
            for &v in members {
                comp_of[v] = c;
            }
        }
        if (0..n).any(|u| edges[u].iter().any(|&(v, negative)| negative && comp_of[u] == comp_of[v])) {
            return None;
        }
        let mut m = self.facts.clone();
        for members in &comps {
            loop {
                let mut changed = false;
                for (h, pos, neg) in &self.rules {
                    let Some(h) = *h else { continue };
                    if !m[h] && comp_of[h] == comp_of[members[0]] && pos.iter().all(|&p| m[p]) && neg.iter().all(|&q| !m[q]) {
                        m[h] = true;
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
        }
        Some(m)
    }
}

/// Strongly connected components, dependencies before dependents.
fn tarjan(edges: &[Vec<(usize, bool)>]) -> Vec<Vec<usize>> {
    struct St<'a> {
        edges: &'a [Vec<(usize, bool)>],
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on: Vec<bool>,
        stack: Vec<usize>,
        next: usize,
        out: Vec<Vec<usize>>,
    }
    fn visit(s: &mut St<'_>, v: usize) {
        s.index[v] = Some(s.next);
        s.low[v] = s.next;
        s.next += 1;
        s.stack.push(v);
        s.on[v] = true;
        for &(w, _) in &s.edges[v] {
            match s.index[w] {
                None => {
                    visit(s, w);
                    s.low[v] = s.low[v].min(s.low[w]);
                }
                Some(i) if s.on[w] => s.low[v] = s.low[v].min(i),
                Some(_) => {}
            }
        }
        if Some(s.low[v]) == s.index[v] {
            let mut comp = Vec::new();
            while let Some(w) = s.stack.pop() {
                s.on[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            s.out.push(comp);
        }
    }
    let n = edges.len();
    let mut s = St { edges, index: vec![None; n], low: vec![0; n], on: vec![false; n], stack: Vec::new(), next: 0, out: Vec::new() };
    for v in 0..n {
        if s.index[v].is_none() {
            visit(&mut s, v);
        }
    }
    s.out
}

/// Every stable model of `p`. With at most `budget` non-fact ground atoms
/// all interpretations are enumerated and checked against the least model
/// of their reduct; above it, stratified groundings are evaluated component
/// by component.
pub fn brute_force_models(p: &Program, budget: usize) -> Result<Vec<Model>, OracleError> {
    let g = index(&ground_program(p));
    let open: Vec<usize> = (0..g.atoms.len()).filter(|&i| !g.facts[i]).collect();
    if open.len() <= budget {
        let mut models = Vec::new();
        for mask in 0u64..(1u64 << open.len()) {
            let mut m = g.facts.clone();
            for (bit, &a) in open.iter().enumerate() {
                m[a] = mask >> bit & 1 == 1;
            }
            if g.reduct_least_model(&m) == m && g.acceptable(&m) {
                models.push(g.model(&m));
            }
        }
        return Ok(models);
    }
    let m = g.stratified_model().ok_or(OracleError::BudgetExceeded { atoms: open.len(), budget })?;
    Ok(if g.acceptable(&m) { vec![g.model(&m)] } else { Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::parse_program;

    fn models(text: &str) -> Vec<Vec<String>> {
        let p = parse_program(text).unwrap();
        brute_force_models(&p, DEFAULT_ATOM_BUDGET).unwrap().iter().map(|m| m.iter().map(ToString::to_string).collect()).collect()
    }

    #[test]
    fn single_default() {
        assert_eq!(models("p :- not q."), [["p"]]);
    }

    #[test]
    fn even_cycle_has_two_models() {
        let mut m = models("p :- not q. q :- not p.");
        m.sort();
        assert_eq!(m, [["p"], ["q"]]);
    }

    #[test]
    fn odd_cycle_has_none() {
        assert!(models("p :- not p.").is_empty());
    }

    #[test]
    fn constraint_and_contradiction_prune() {
        assert!(models("p. :- p.").is_empty());
        assert!(models("p(a). -p(X) :- p(X).").is_empty());
    }

    #[test]
    fn anonymous_positive_literal() {
        let m = models("e(a, b). h(X) :- e(_, X). n(X) :- e(X, _), not h(X).");
        assert_eq!(m.len(), 1);
        assert!(m[0].contains(&"h(b)".to_string()) && m[0].contains(&"n(a)".to_string()), "{m:?}");
    }

    #[test]
    fn stratified_fallback_agrees() {
        let text = "e(a, b). e(b, c). e(c, d). r(X, Y) :- e(X, Y). r(X, Z) :- r(X, Y), e(Y, Z). u(X) :- e(X, Y), not r(Y, d).";
        let p = parse_program(text).unwrap();
        let small = brute_force_models(&p, DEFAULT_ATOM_BUDGET).unwrap();
        let big = brute_force_models(&p, 0).unwrap();
        assert_eq!(small, big);
        assert!(brute_force_models(&parse_program("p :- not q. q :- not p.").unwrap(), 0).is_err());
    }
}
