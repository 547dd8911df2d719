//! Goal-directed evaluation of ladder queries, justification trees, and a
//! brute-force stable-model oracle for testing.

mod emit;
mod engine;
mod justify;
mod oracle;

use indexmap::IndexMap;

use crate::ir::{stratification_check, Atom, Literal, Program, StratificationError, Term};
use crate::query::{Confidence, Query, QueryLadder};
use engine::{Compiled, Engine, Flow, Step};

pub use emit::emit_lp;
pub use justify::{Justification, JustificationTree, Support};
pub use oracle::{brute_force_models, ground_program, GroundRule, Model, OracleError, DEFAULT_ATOM_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error(transparent)]
    NotStratified(#[from] StratificationError),
    #[error("floundering: `{literal}` is not ground when selected")]
    Floundering { literal: String },
    #[error("negation through recursion at `{atom}`")]
    NegativeLoop { atom: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Answer {
    /// Every named query variable, in order of first occurrence.
    pub bindings: IndexMap<String, Term>,
    pub confidence: Confidence,
    pub variant_index: usize,
    pub justification: Justification,
}

impl Answer {
    pub fn value(&self, var: &str) -> Option<&Term> {
        self.bindings.get(var)
    }
}

/// A program checked and compiled once, queried many times. Each query
/// gets fresh tables, so a `Solver` can be shared across threads.
#[derive(Debug)]
pub struct Solver<'p> {
    program: &'p Program,
    compiled: Compiled,
}

impl<'p> Solver<'p> {
    pub fn new(program: &'p Program) -> Result<Solver<'p>, SolveError> {
        stratification_check(program)?;
        Ok(Solver { program, compiled: Compiled::new(program) })
    }

    /// Up to `limit` distinct answers to a conjunctive query, in evaluation
    /// order (rule order, leftmost selection).
    pub fn solve(&self, q: &Query, limit: usize) -> Result<Vec<Answer>, SolveError> {
        let mut e = Engine::new(&self.compiled);
        let mut unknown = Vec::new();
        let cq = e.compile_query(&q.subgoals, &mut unknown);
        let named: Vec<(usize, &String)> = cq.var_names.iter().enumerate().filter(|(_, n)| *n != "_").collect();
        let mut found: Vec<(IndexMap<String, Term>, Vec<Step>)> = Vec::new();
        if limit > 0 {
            e.run_query(&cq, &mut |e, env, proof| {
                let b: IndexMap<String, Term> =
                    named.iter().map(|&(i, n)| (n.clone(), e.term(env[i].expect("safe query")))).collect();
                if !found.iter().any(|(f, _)| *f == b) {
                    found.push((b, proof.iter().map(|s| s.clone().expect("proved step")).collect()));
                }
                if found.len() >= limit {
                    Flow::Stop
                } else {
                    Flow::Continue
                }
            })?;
        }
        Ok(found
            .into_iter()
            .map(|(bindings, steps)| {
                let subgoals: Vec<JustificationTree> = steps.iter().map(|s| justify::build_tree(&e, self.program, s)).collect();
                let query = subgoals.iter().map(|t| t.node.clone()).collect();
                Answer { bindings, confidence: q.confidence, variant_index: q.variant_index, justification: Justification { query, subgoals } }
            })
            .collect())
    }

    /// Whether a ground atom is derivable.
    pub fn holds(&self, atom: &Atom) -> Result<bool, SolveError> {
        let q = Query::new(vec![Literal::pos(atom.clone())], "", Vec::new(), Confidence::Certain, 0);
        Ok(!self.solve(&q, 1)?.is_empty())
    }

    /// The first answer over the ladder: class I variants in order, then
    /// II, III and IV.
    pub fn solve_ladder(&self, l: &QueryLadder) -> Result<Option<Answer>, SolveError> {
        for q in l.iter() {
            if let Some(a) = self.solve(q, 1)?.into_iter().next() {
                return Ok(Some(a));
            }
        }
        Ok(None)
    }
}

pub fn solve(p: &Program, q: &Query, limit: usize) -> Result<Vec<Answer>, SolveError> {
    Solver::new(p)?.solve(q, limit)
}

pub fn solve_ladder(p: &Program, l: &QueryLadder) -> Result<Option<Answer>, SolveError> {
    Solver::new(p)?.solve_ladder(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::parse_program;

    fn query(text: &str, x: &str) -> Query {
        let body = crate::ir::parse_rules(&format!(":- {text}.")).unwrap().remove(0).0.body;
        Query::new(body, x, Vec::new(), Confidence::Certain, 0)
    }

    fn values(p: &str, q: &str, x: &str) -> Vec<String> {
        let p = parse_program(p).unwrap();
        solve(&p, &query(q, x), 100).unwrap().iter().map(|a| a.value(x).unwrap().to_string()).collect()
    }

    #[test]
    fn single_fact() {
        assert_eq!(values("p(a).", "p(X)", "X"), ["a"]);
    }

    #[test]
    fn transitive_closure_terminates() {
        let p = "_similar(a, b). _similar(b, c). _similar(c, a). _similar(X, Y) :- _similar(X, Z), _similar(Z, Y).";
        let mut v = values(p, "_similar(a, X)", "X");
        v.sort();
        assert_eq!(v, ["a", "b", "c"]);
    }

    #[test]
    fn mutual_recursion() {
        let p = "e(1, 2). e(2, 3). e(3, 1). odd(X, Y) :- e(X, Y). odd(X, Y) :- even(X, Z), e(Z, Y). even(X, Y) :- odd(X, Z), e(Z, Y).";
        let mut v = values(p, "even(1, X)", "X");
        v.sort();
        assert_eq!(v, ["1", "2", "3"]);
    }

    #[test]
    fn naf_and_classical_negation() {
        let p = "bird(tweety). bird(sam). -fly(sam). fly(X) :- bird(X), not -fly(X).";
        assert_eq!(values(p, "fly(X)", "X"), ["tweety"]);
        assert_eq!(values(p, "-fly(X)", "X"), ["sam"]);
    }

    #[test]
    fn floundering_is_reported() {
        let p = parse_program("p(a). q(a).").unwrap();
        let err = solve(&p, &query("p(X), not q(Y)", "X"), 1).unwrap_err();
        assert!(matches!(err, SolveError::Floundering { .. }), "{err}");
    }

    #[test]
    fn naf_waits_until_ground() {
        let p = "q(a). q(b). r(b). p(X) :- not r(X), q(X).";
        assert_eq!(values(p, "p(X)", "X"), ["a"]);
    }

    #[test]
    fn unstratified_rejected() {
        let p = parse_program("p :- not q. q :- not p.").unwrap();
        assert!(matches!(Solver::new(&p), Err(SolveError::NotStratified(_))));
    }

    #[test]
    fn unknown_predicate_and_constant() {
        assert!(values("p(a).", "zzz(X)", "X").is_empty());
        assert!(values("p(a).", "p(X), not p(nowhere)", "X") == ["a"]);
    }

    #[test]
    fn justification_renders_provenance_and_failure() {
        let p = parse_program("% @source sentence:1\nbird(tweety).\n% @source manual\nfly(X) :- bird(X), not -fly(X).\n").unwrap();
        let a = solve(&p, &query("fly(X)", "X"), 1).unwrap().remove(0);
        let text = a.justification.to_string();
        assert_eq!(
            text,
            "?- fly(tweety).\n  fly(tweety)  [rule 1, manual]\n    bird(tweety)  [fact, sentence:1]\n    not -fly(tweety)  [finitely failed]\n"
        );
    }

    #[test]
    fn answers_are_deduplicated_and_limited() {
        let p = "e(a, b). e(a, c). n(X) :- e(X, Y).";
        assert_eq!(values(p, "n(X)", "X"), ["a"]);
        let p = parse_program("p(a). p(b). p(c).").unwrap();
        assert_eq!(solve(&p, &query("p(X)", "X"), 2).unwrap().len(), 2);
    }
}
