//! Query predicates, base constraints and their combination into class I
//! queries.

use super::{AnswerType, Confidence, ExpansionTable, Query, QuestionAnalysis};
use crate::ingest::Ner;
use crate::ir::{Atom, Literal, Term};
use crate::kbgen::{lemma_const, preposition, region_roles, role_const, skipped_nmod};

fn lit(predicate: &str, args: Vec<Term>) -> Literal {
    Literal::pos(Atom::new(predicate, args))
}

fn var(prefix: char, k: usize) -> Term {
    Term::var(format!("{prefix}{k}"))
}

impl QuestionAnalysis {
    pub fn answer_var(&self) -> Term {
        var('X', self.suffix)
    }

    fn event_var(&self) -> Term {
        var('E', self.suffix)
    }

    /// Constant for a question token, or the answer variable in its place.
    fn slot(&self, i: usize) -> Term {
        if Some(i) == self.answer_token {
            self.answer_var()
        } else {
            lemma_const(self.sentence.sentence().token(i))
        }
    }

    fn roles(&self) -> Option<(Term, Option<usize>, Option<usize>)> {
        self.main_region.map(|r| region_roles(&self.sentence.regions[r], self.sentence.sentence()))
    }

    fn is_copula(&self) -> bool {
        self.main_region
            .is_some_and(|r| matches!(self.sentence.regions[r].kind, crate::ingest::RegionKind::Copula { .. }))
    }

    /// Role tokens other than the answer: (token, variable) pairs.
    fn anchors(&self) -> Vec<(usize, Term)> {
        let Some((_, actor, participant)) = self.roles() else { return Vec::new() };
        let mut out = Vec::new();
        if let Some(a) = actor.filter(|&a| Some(a) != self.answer_token) {
            out.push((a, var('S', self.suffix)));
        }
        if let Some(p) = participant.filter(|&p| Some(p) != self.answer_token) {
            out.push((p, var('O', self.suffix)));
        }
        out
    }
}

/// Event variants (subject position, passive agent, clause subject), each
/// followed by `_similar` subgoals for the known role entities. Copula
/// questions get an `_is` variant first. Empty without a trigger.
pub fn gen_event_query_variants(a: &QuestionAnalysis) -> Vec<Vec<Literal>> {
    let Some((verb, actor, participant)) = a.roles() else { return Vec::new() };
    let k = a.suffix;
    let (x, e) = (a.answer_var(), a.event_var());
    let is_answer = |t: Option<usize>| t.is_some() && t == a.answer_token;
    let actor_slot = if is_answer(actor) { x.clone() } else { var('S', k) };
    let part_slot = if is_answer(participant) { x.clone() } else { var('O', k) };
    let clause_part = if is_answer(participant) { x.clone() } else { Term::anon() };

    let s = a.sentence.sentence();
    let similar: Vec<Literal> =
        a.anchors().into_iter().map(|(t, v)| lit("_similar", vec![role_const(s, t), v])).collect();

    let mut groups: Vec<Vec<Literal>> = Vec::new();
    if a.is_copula() {
        groups.push(vec![lit("_is", vec![actor_slot.clone(), part_slot.clone()])]);
    }
    groups.push(vec![lit("event", vec![e.clone(), verb.clone(), actor_slot.clone(), part_slot.clone()])]);
    groups.push(vec![
        lit("event", vec![e.clone(), verb.clone(), Term::anon(), part_slot]),
        lit("_property", vec![e.clone(), verb.clone(), Term::constant("_by"), actor_slot.clone()]),
    ]);
    groups.push(vec![
        lit("event", vec![e.clone(), verb, Term::anon(), clause_part]),
        lit("_relation", vec![actor_slot, e, Term::constant("_clause")]),
    ]);
    for g in &mut groups {
        g.extend(similar.iter().cloned());
    }
    groups
}

/// `_property`, `_possess` and quantity `_mod` subgoals of the question.
pub fn gen_property_query_subgoals(a: &QuestionAnalysis) -> Vec<Literal> {
    let s = a.sentence.sentence();
    let e = a.event_var();
    let trigger = a.main_region.map(|r| a.sentence.regions[r].trigger_token);
    let verb = a.roles().map(|(v, _, _)| v);
    let mut out: Vec<Literal> = Vec::new();

    for d in &s.deps {
        if !matches!(d.base(), "nmod" | "obl") || d.gov == 0 || skipped_nmod(s, &d.rel, d.dep) {
            continue;
        }
        let modified = match &verb {
            Some(v) if Some(d.gov) == trigger => v.clone(),
            _ if s.token(d.gov).is_noun() => lemma_const(s.token(d.gov)),
            _ => continue,
        };
        out.push(lit("_property", vec![e.clone(), modified, preposition(s, &d.rel, d.dep), a.slot(d.dep)]));
    }

    if let (Some(w), Some(v), Some(t)) = (a.wh_token, &verb, trigger) {
        let marker = match a.question_type {
            super::QuestionType::When => Some("on"),
            super::QuestionType::Where => Some("in"),
            _ => None,
        };
        if let Some(m) = marker.filter(|_| s.parents(w).any(|p| p.gov == t && p.base() == "advmod")) {
            out.push(lit("_property", vec![e.clone(), v.clone(), Term::constant(m), a.answer_var()]));
        }
    }

    for d in s.deps.iter().filter(|d| d.rel == "nmod:poss" && d.gov != 0) {
        out.push(lit("_possess", vec![a.slot(d.dep), a.slot(d.gov)]));
    }

    if let (true, Some(f)) = (a.question_type.is_quantity(), a.focus_token) {
        out.push(lit("_mod", vec![lemma_const(s.token(f)), a.answer_var()]));
    }
    dedup(out)
}

/// Named-entity facts for the known role entities, e.g. `organization(abc)`.
pub fn gen_entity_query_subgoals(a: &QuestionAnalysis) -> Vec<Literal> {
    let s = a.sentence.sentence();
    a.anchors()
        .into_iter()
        .filter_map(|(t, _)| {
            let concept = match s.token(t).ner {
                Ner::Person => "person",
                Ner::Location => "location",
                Ner::Organization => "organization",
                Ner::Date | Ner::Time => "time",
                Ner::Money => "money",
                Ner::Percent => "percent",
                Ner::Number | Ner::O => return None,
            };
            Some(lit(concept, vec![lemma_const(s.token(t))]))
        })
        .collect()
}

fn is_predicate_name(w: &str) -> bool {
    w.starts_with(|c: char| c.is_ascii_lowercase()) && w.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Answer-type constraints; PLACE and PERSON yield two sibling
/// alternatives (unary first, then sense-qualified).
pub fn gen_base_constraints(a: &QuestionAnalysis) -> Vec<Vec<Literal>> {
    let k = a.suffix;
    let (x, t) = (a.answer_var(), var('T', k));
    let word = a.answer_word.as_deref().filter(|w| is_predicate_name(w));
    let part = |p: &str| vec![lit(p, vec![t.clone(), x.clone()]), lit("time", vec![t.clone()])];
    match a.answer_type {
        AnswerType::Time => vec![vec![lit("time", vec![x])]],
        AnswerType::Day => vec![part("day")],
        AnswerType::Month => vec![part("month")],
        AnswerType::Year => vec![part("year")],
        AnswerType::Place => vec![
            vec![lit("location", vec![x.clone()])],
            vec![lit("location", vec![x, Term::constant("noun_location")])],
        ],
        AnswerType::Person => vec![
            vec![lit("person", vec![x.clone()])],
            vec![lit("person", vec![x, Term::constant("noun_person")])],
        ],
        AnswerType::Number => vec![vec![lit("number", vec![x])]],
        AnswerType::Variable if word.is_some() => vec![vec![lit(word.unwrap_or_default(), vec![x, Term::anon()])]],
        AnswerType::Unknown if word.is_some() => vec![vec![lit(word.unwrap_or_default(), vec![x])]],
        _ => vec![vec![lit("mentioned", vec![x])]],
    }
}

fn dedup(lits: Vec<Literal>) -> Vec<Literal> {
    let mut out: Vec<Literal> = Vec::with_capacity(lits.len());
    for l in lits {
        if !out.contains(&l) {
            out.push(l);
        }
    }
    out
}

/// Class I queries: every event variant joined with the extra subgoals and
/// each base alternative, then the special-predicate expansions.
pub fn combine_constraints(
    a: &QuestionAnalysis,
    variants: &[Vec<Literal>],
    extra: &[Literal],
    bases: &[Vec<Literal>],
    expansions: &ExpansionTable,
) -> Vec<Query> {
    let x = format!("X{}", a.suffix);
    let mut out: Vec<Query> = Vec::new();
    let mut push = |subgoals: Vec<Literal>, base: &[Literal]| {
        let q = Query::new(dedup(subgoals), &x, base.to_vec(), Confidence::Certain, out.len());
        out.push(q);
    };
    let no_event = [Vec::new()];
    let groups = if variants.is_empty() { &no_event[..] } else { variants };
    for g in groups {
        for b in bases {
            push(g.iter().chain(extra).chain(b).cloned().collect(), b);
        }
    }

    let (Some((verb, actor, _)), s) = (a.roles(), a.sentence.sentence()) else { return out };
    let Some(actor) = actor.filter(|&t| Some(t) != a.answer_token) else { return out };
    let verb = verb.text().unwrap_or_default();
    let sv = var('S', a.suffix);
    for ex in expansions.lookup(&verb, a.question_type) {
        for b in bases {
            let mut q = vec![
                lit(&ex.predicate, vec![sv.clone(), a.answer_var()]),
                lit("_similar", vec![role_const(s, actor), sv.clone()]),
            ];
            q.extend(b.iter().cloned());
            push(q, b);
        }
    }
    out
}
