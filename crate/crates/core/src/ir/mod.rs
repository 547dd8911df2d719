//! Logic-program intermediate representation.
//!
//! Programs are function-free: terms are constants, integers or variables.
//! Classical negation (`-p`) is a flag on the atom and is treated as a
//! separate predicate namespace by the solver.

mod parse;
mod print;
mod stratify;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

pub use parse::{parse_program, parse_rules, LocatedRule, ParseError};
pub use print::print_program;
pub use stratify::{stratification_check, Pattern, Strata, StratificationError};

/// The reserved constant for an absent actor or participant.
pub const NULL: &str = "null";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Const(String),
    Int(i64),
    /// Uppercase-initial name, or `_` for an anonymous variable.
    Var(String),
}

impl Term {
    pub fn constant(s: impl Into<String>) -> Term {
        Term::Const(s.into())
    }

    pub fn var(s: impl Into<String>) -> Term {
        Term::Var(s.into())
    }

    pub fn anon() -> Term {
        Term::Var("_".to_string())
    }

    pub fn null() -> Term {
        Term::Const(NULL.to_string())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn is_anon(&self) -> bool {
        matches!(self, Term::Var(v) if v == "_")
    }

    /// Builds a constant from a normalized token string. All-digit strings
    /// become integers.
    pub fn from_token(s: &str) -> Term {
        if !s.is_empty() && s.len() < 18 && s.bytes().all(|b| b.is_ascii_digit()) {
            if let Ok(n) = s.parse() {
                return Term::Int(n);
            }
        }
        Term::Const(s.to_string())
    }

    /// The constant's text, if this term is ground.
    pub fn text(&self) -> Option<String> {
        match self {
            Term::Const(c) => Some(c.clone()),
            Term::Int(n) => Some(n.to_string()),
            Term::Var(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
    pub negated: bool,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Atom {
        Atom { predicate: predicate.into(), args, negated: false }
    }

    /// Same atom under classical negation.
    pub fn neg(predicate: impl Into<String>, args: Vec<Term>) -> Atom {
        Atom { predicate: predicate.into(), args, negated: true }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(|t| !t.is_var())
    }

    /// Predicate key: classical negation, name and arity.
    pub fn signature(&self) -> Signature {
        Signature { negated: self.negated, name: self.predicate.clone(), arity: self.args.len() }
    }

    /// Named (non-anonymous) variables in order of first occurrence.
    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.args.iter().filter_map(|t| match t {
            Term::Var(v) if v != "_" => Some(v.as_str()),
            _ => None,
        })
    }

    pub fn has_anon(&self) -> bool {
        self.args.iter().any(Term::is_anon)
    }

    /// The same atom with the classical-negation flag flipped.
    pub fn complement(&self) -> Atom {
        Atom { negated: !self.negated, ..self.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub negated: bool,
    pub name: String,
    pub arity: usize,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("-")?;
        }
        write!(f, "{}/{}", self.name, self.arity)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub atom: Atom,
    /// Negation as failure (`not`).
    pub naf: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Literal {
        Literal { atom, naf: false }
    }

    pub fn not(atom: Atom) -> Literal {
        Literal { atom, naf: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    /// `None` for an integrity constraint.
    pub head: Option<Atom>,
    pub body: Vec<Literal>,
}

impl Rule {
    pub fn fact(atom: Atom) -> Rule {
        Rule { head: Some(atom), body: Vec::new() }
    }

    pub fn new(head: Atom, body: Vec<Literal>) -> Rule {
        Rule { head: Some(head), body }
    }

    pub fn constraint(body: Vec<Literal>) -> Rule {
        Rule { head: None, body }
    }

    pub fn is_fact(&self) -> bool {
        self.head.is_some() && self.body.is_empty()
    }

    /// Variables that violate safety: those in the head or in a NAF literal
    /// that never occur in a positive body literal. Anonymous variables in
    /// the head or under `not` are reported as `_`.
    pub fn unsafe_vars(&self) -> Vec<String> {
        let bound: HashSet<&str> = self
            .body
            .iter()
            .filter(|l| !l.naf)
            .flat_map(|l| l.atom.vars())
            .collect();
        let mut out: Vec<String> = Vec::new();
        let mut push = |v: &str| {
            if !out.iter().any(|o| o == v) {
                out.push(v.to_string());
            }
        };
        if let Some(h) = &self.head {
            for v in h.vars() {
                if !bound.contains(v) {
                    push(v);
                }
            }
            if h.has_anon() {
                push("_");
            }
        }
        for l in self.body.iter().filter(|l| l.naf) {
            for v in l.atom.vars() {
                if !bound.contains(v) {
                    push(v);
                }
            }
            if l.atom.has_anon() {
                push("_");
            }
        }
        out
    }

    pub fn is_safe(&self) -> bool {
        self.unsafe_vars().is_empty()
    }
}

/// Where a rule came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Provenance {
    /// Compiled from the sentence with this 1-based index.
    Sentence(usize),
    Ontology,
    Manual,
    #[default]
    Plumbing,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Sentence(i) => write!(f, "sentence:{i}"),
            Provenance::Ontology => f.write_str("ontology"),
            Provenance::Manual => f.write_str("manual"),
            Provenance::Plumbing => f.write_str("plumbing"),
        }
    }
}

impl std::str::FromStr for Provenance {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ontology" => Ok(Provenance::Ontology),
            "manual" => Ok(Provenance::Manual),
            "plumbing" => Ok(Provenance::Plumbing),
            _ => s
                .strip_prefix("sentence:")
                .and_then(|n| n.parse().ok())
                .map(Provenance::Sentence)
                .ok_or_else(|| format!("unknown provenance `{s}`")),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ProgramError {
    #[error("unsafe variable(s) {vars:?} in rule `{rule}`")]
    Unsafe { rule: String, vars: Vec<String> },
    #[error("`not` may only appear in rule bodies")]
    NafInHead,
    #[error("contradictory facts `{positive}` and `{negative}`")]
    Inconsistent { positive: String, negative: String },
}

/// An ordered collection of rules with a provenance tag per rule.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    rules: Vec<Rule>,
    provenance: Vec<Provenance>,
}

impl Program {
    pub fn new() -> Program {
        Program::default()
    }

    /// Appends a rule after checking safety.
    pub fn push(&mut self, rule: Rule, provenance: Provenance) -> Result<(), ProgramError> {
        let vars = rule.unsafe_vars();
        if !vars.is_empty() {
            return Err(ProgramError::Unsafe { rule: print::rule_to_string(&rule), vars });
        }
        self.rules.push(rule);
        self.provenance.push(provenance);
        Ok(())
    }

    /// Appends every rule of `other`, keeping its provenance.
    pub fn extend(&mut self, other: Program) {
        self.rules.extend(other.rules);
        self.provenance.extend(other.provenance);
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn provenance(&self, index: usize) -> Provenance {
        self.provenance[index]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Rule, Provenance)> {
        self.rules.iter().zip(self.provenance.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn facts(&self) -> impl Iterator<Item = &Atom> {
        self.rules.iter().filter(|r| r.is_fact()).filter_map(|r| r.head.as_ref())
    }

    pub fn fact_count(&self) -> usize {
        self.rules.iter().filter(|r| r.is_fact()).count()
    }

    pub fn contains_fact(&self, atom: &Atom) -> bool {
        self.facts().any(|f| f == atom)
    }

    /// Every ground constant mentioned anywhere in the program, in order of
    /// first appearance.
    pub fn constants(&self) -> Vec<Term> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let atoms = self
            .rules
            .iter()
            .flat_map(|r| r.head.iter().chain(r.body.iter().map(|l| &l.atom)));
        for atom in atoms {
            for t in &atom.args {
                if !t.is_var() && seen.insert(t.clone()) {
                    out.push(t.clone());
                }
            }
        }
        out
    }

    /// Fails on the first ground fact pair `p(t..)` / `-p(t..)`.
    pub fn check_consistency(&self) -> Result<(), ProgramError> {
        let facts: HashSet<&Atom> = self.facts().collect();
        let mut ordered: Vec<&Atom> = facts.iter().copied().filter(|a| !a.negated).collect();
        ordered.sort();
        for atom in ordered {
            let neg = atom.complement();
            if facts.contains(&neg) {
                return Err(ProgramError::Inconsistent {
                    positive: print::atom_to_string(atom),
                    negative: print::atom_to_string(&neg),
                });
            }
        }
        Ok(())
    }

    /// Predicate signatures defined by some rule head.
    pub fn defined(&self) -> BTreeSet<Signature> {
        self.rules.iter().filter_map(|r| r.head.as_ref()).map(Atom::signature).collect()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        print::write_term(f, self)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        print::write_atom(f, self)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.naf {
            f.write_str("not ")?;
        }
        print::write_atom(f, &self.atom)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::rule_to_string(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Term {
        Term::constant(s)
    }

    #[test]
    fn unsafe_head_variable_is_rejected() {
        let mut p = Program::new();
        let rule = Rule::new(Atom::new("p", vec![Term::var("X")]), vec![]);
        assert!(matches!(p.push(rule, Provenance::Plumbing), Err(ProgramError::Unsafe { .. })));
    }

    #[test]
    fn naf_variable_must_be_bound_positively() {
        let rule = Rule::new(
            Atom::new("q", vec![Term::var("X")]),
            vec![
                Literal::pos(Atom::new("p", vec![Term::var("X")])),
                Literal::not(Atom::new("r", vec![Term::var("Y")])),
            ],
        );
        assert_eq!(rule.unsafe_vars(), vec!["Y".to_string()]);
    }

    #[test]
    fn contradictory_facts_are_found() {
        let mut p = Program::new();
        p.push(Rule::fact(Atom::new("tree", vec![c("t1"), c("plant")])), Provenance::Manual).unwrap();
        p.push(Rule::fact(Atom::neg("tree", vec![c("t1"), c("plant")])), Provenance::Manual).unwrap();
        assert!(matches!(p.check_consistency(), Err(ProgramError::Inconsistent { .. })));
    }

    #[test]
    fn digit_tokens_become_integers() {
        assert_eq!(Term::from_token("1856"), Term::Int(1856));
        assert_eq!(Term::from_token("581,309"), c("581,309"));
        assert_eq!(Term::from_token("24_10"), c("24_10"));
    }
}
