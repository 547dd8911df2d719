//! Helpers shared by the integration test targets.
#![allow(dead_code)]

pub mod corpus;
pub mod golden;
pub mod programs;

use std::collections::HashMap;
use std::path::PathBuf;

use caspr::ingest::{load_document, AnnotatedDocument};
use caspr::ir::{parse_rules, Literal, Term};

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel)
}

pub fn load(rel: &str) -> AnnotatedDocument {
    let path = fixture(rel);
    let bytes = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    load_document(&bytes).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Parses a comma-separated conjunction such as `p(X), not q(X)`.
pub fn conjunction(text: &str) -> Vec<Literal> {
    let rules = parse_rules(&format!(":- {text}.")).unwrap_or_else(|e| panic!("{text}: {e}"));
    rules.into_iter().next().expect("one rule").0.body
}

fn bind(map: &mut HashMap<String, String>, used: &mut HashMap<String, String>, a: &str, b: &str) -> bool {
    match (map.get(a), used.get(b)) {
        (Some(x), _) if x != b => false,
        (_, Some(y)) if y != a => false,
        _ => {
            map.insert(a.to_string(), b.to_string());
            used.insert(b.to_string(), a.to_string());
            true
        }
    }
}

fn match_literal(a: &Literal, b: &Literal, map: &HashMap<String, String>, used: &HashMap<String, String>) -> Option<(HashMap<String, String>, HashMap<String, String>)> {
    if a.naf != b.naf || a.atom.negated != b.atom.negated || a.atom.predicate != b.atom.predicate || a.atom.args.len() != b.atom.args.len() {
        return None;
    }
    let (mut map, mut used) = (map.clone(), used.clone());
    for (x, y) in a.atom.args.iter().zip(&b.atom.args) {
        let ok = match (x, y) {
            (x, y) if x.is_anon() || y.is_anon() => x.is_anon() && y.is_anon(),
            (Term::Var(v), Term::Var(w)) => bind(&mut map, &mut used, v, w),
            (x, y) => x == y,
        };
        if !ok {
            return None;
        }
    }
    Some((map, used))
}

fn embed(a: &[Literal], b: &[Literal], taken: &mut Vec<bool>, map: &HashMap<String, String>, used: &HashMap<String, String>) -> bool {
    let Some((first, rest)) = a.split_first() else { return true };
    for j in 0..b.len() {
        if taken[j] {
            continue;
        }
        if let Some((m, u)) = match_literal(first, &b[j], map, used) {
            taken[j] = true;
            if embed(rest, b, taken, &m, &u) {
                return true;
            }
            taken[j] = false;
        }
    }
    false
}

/// True when every literal of `a` maps onto a distinct literal of `b` under
/// one consistent, injective variable renaming.
pub fn embeds(a: &[Literal], b: &[Literal]) -> bool {
    embed(a, b, &mut vec![false; b.len()], &HashMap::new(), &HashMap::new())
}

/// Equality as multisets of literals up to variable renaming.
pub fn same_up_to_renaming(a: &[Literal], b: &[Literal]) -> bool {
    a.len() == b.len() && embeds(a, b)
}

/// Every conjunction in `expected` matches a distinct one in `actual`.
pub fn same_queries(expected: &[Vec<Literal>], actual: &[Vec<Literal>]) -> bool {
    fn go(e: &[Vec<Literal>], a: &[Vec<Literal>], taken: &mut Vec<bool>) -> bool {
        let Some((first, rest)) = e.split_first() else { return true };
        for j in 0..a.len() {
            if !taken[j] && same_up_to_renaming(first, &a[j]) {
                taken[j] = true;
                if go(rest, a, taken) {
                    return true;
                }
                taken[j] = false;
            }
        }
        false
    }
    expected.len() == actual.len() && go(expected, actual, &mut vec![false; actual.len()])
}
