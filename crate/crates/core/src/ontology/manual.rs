use super::OntologyError;
use crate::ir::{parse_rules, Atom, Literal, Rule, Term};

/// Parses hand-written knowledge. A variable that occurs only in the head
/// (and possibly under `not`) of a proper rule is bound by a `mentioned/1`
/// guard, so defaults like
/// `event(E, represent, X, Y) :- _possess(Y, X), ..., not ab_event(E, represent, X, Y).`
/// stay safe. Anything else unsafe is rejected with its location.
pub fn import_manual_knowledge(text: &str) -> Result<Vec<Rule>, OntologyError> {
    let mut out = Vec::new();
    for (mut rule, _, (line, column)) in parse_rules(text)? {
        let unsafe_vars = rule.unsafe_vars();
        if !unsafe_vars.is_empty() && !rule.body.is_empty() && !unsafe_vars.iter().any(|v| v == "_") {
            for v in &unsafe_vars {
                rule.body.push(Literal::pos(Atom::new("mentioned", vec![Term::var(v.clone())])));
            }
        }
        if !rule.is_safe() {
            return Err(OntologyError::UnsafeManualRule { line, column, rule: rule.to_string(), vars: rule.unsafe_vars() });
        }
        out.push(rule);
    }
    Ok(out)
}
