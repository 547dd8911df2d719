use crate::ir::{parse_program, Atom, Program, Rule, Term, NULL};

const SIMILAR: &str = "\
_similar(X, Y) :- _abbreviation(X, Y).
_similar(X, Y) :- _abbreviation(Y, X).
_similar(X, Y) :- _is(X, Y).
_similar(X, Y) :- _similar(X, Z), _similar(Z, Y).
_similar(X, X) :- mentioned(X).
";

/// The fixed similarity rules: abbreviation in both directions, instance,
/// transitivity, and reflexivity over mentioned constants.
pub fn gen_similar_rules() -> Vec<Rule> {
    parse_program(SIMILAR).expect("built-in rules parse").rules().to_vec()
}

/// `mentioned(c)` for every constant of `kb` except `null`, in first
/// appearance order.
pub fn gen_mentioned_facts(kb: &Program) -> Vec<Rule> {
    kb.constants()
        .into_iter()
        .filter(|c| !matches!(c, Term::Const(s) if s == NULL))
        .map(|c| Rule::fact(Atom::new("mentioned", vec![c])))
        .collect()
}
