//! Knowledge generation: compiles a normalized, segmented document into
//! ground facts over a fixed predicate vocabulary.
//!
//! | predicate | shape |
//! |-----------|-------|
//! | `event/4` | event id, trigger lemma, actor, participant |
//! | `_property/4` | event id, modified lemma, preposition, modifier |
//! | `_mod/2`, `_possess/2`, `_is/2` | lexical relations |
//! | `_relation/3` | clause or conjunction links |
//! | `_abbreviation/2`, `_start_date/2`, `_end_date/2` | special patterns |
//! | `day/2`, `month/2`, `year/2`, `number/1`, `time/1` | values |
//!
//! Named entities and appositions additionally produce `concept(instance)`
//! facts such as `location(san_francisco)` or `team(denver_broncos)`.

mod entities;
mod events;
mod lexical;
mod relations;
#[cfg(test)]
mod testkit;

use std::collections::HashSet;

use rayon::prelude::*;

use crate::ingest::{
    normalize_sentence, segment_event_regions, AnnotatedDocument, AnnotatedToken, EventRegion, Normalized, Sentence,
};
use crate::ir::{Atom, Program, ProgramError, Provenance, Rule, Term};

pub use entities::{gen_entity_facts, gen_special_facts, parse_date_parts, DateParts};
pub use events::{gen_event_facts, gen_property_facts};
pub(crate) use events::{preposition, region_roles, role_const, skipped_nmod};
pub use lexical::{gen_instance_facts, gen_modifier_facts, gen_possess_facts};
pub use relations::gen_relation_facts;

/// Ground facts produced by one generator for one sentence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactBatch {
    pub facts: Vec<Atom>,
    /// 1-based sentence index.
    pub source_sentence: usize,
}

impl FactBatch {
    fn new(source_sentence: usize) -> Self {
        FactBatch { facts: Vec::new(), source_sentence }
    }

    fn push(&mut self, predicate: &str, args: Vec<Term>) {
        let atom = Atom::new(predicate, args);
        debug_assert!(atom.is_ground(), "non-ground fact {atom}");
        if !self.facts.contains(&atom) {
            self.facts.push(atom);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn rules(&self) -> impl Iterator<Item = Rule> + '_ {
        self.facts.iter().cloned().map(Rule::fact)
    }
}

/// A sentence ready for fact generation.
#[derive(Clone, Debug)]
pub struct PreparedSentence {
    /// 1-based position in the document.
    pub index: usize,
    pub normalized: Normalized,
    pub regions: Vec<EventRegion>,
}

impl PreparedSentence {
    pub fn sentence(&self) -> &Sentence {
        &self.normalized.sentence
    }

    /// Region anchored at token `i` (a verbal trigger or copula complement).
    pub(crate) fn region_at(&self, i: usize) -> Option<&EventRegion> {
        self.regions.iter().find(|r| r.anchor() == i)
    }

    pub(crate) fn region_of(&self, i: usize) -> Option<usize> {
        crate::ingest::region_of(self.sentence(), &self.regions, i)
    }
}

/// Normalizes and segments a document; region ids run 1..N over the whole
/// document.
pub fn prepare_document(d: &AnnotatedDocument) -> Vec<PreparedSentence> {
    let normalized: Vec<Normalized> = d.sentences.par_iter().map(normalize_sentence).collect();
    let mut next = 1;
    normalized
        .into_iter()
        .enumerate()
        .map(|(i, n)| {
            let regions = segment_event_regions(&n.sentence, next);
            next += regions.len();
            PreparedSentence { index: i + 1, normalized: n, regions }
        })
        .collect()
}

/// Constant for a token in event roles: the normalized surface word.
pub(crate) fn word_const(t: &AnnotatedToken) -> Term {
    Term::from_token(&t.word)
}

/// Constant for a token everywhere else: the normalized lemma.
pub(crate) fn lemma_const(t: &AnnotatedToken) -> Term {
    Term::from_token(&t.lemma)
}

/// Modifier chain of a noun (`amod`, `nummod`, `compound` dependents in
/// surface order, then the head), or `None` when there is no `amod` or
/// `nummod` modifier. `lemma` selects the head's lemma over its word.
pub(crate) fn modified_form(s: &Sentence, i: usize, lemma: bool) -> Option<Term> {
    let mods: Vec<usize> = s
        .deps
        .iter()
        .filter(|e| e.gov == i && matches!(e.rel.as_str(), "amod" | "nummod" | "compound"))
        .map(|e| e.dep)
        .collect();
    if !s.deps.iter().any(|e| e.gov == i && matches!(e.rel.as_str(), "amod" | "nummod")) {
        return None;
    }
    let mut mods = mods;
    mods.sort_unstable();
    let mut parts: Vec<&str> = mods.iter().map(|&m| s.token(m).lemma.as_str()).collect();
    let head = s.token(i);
    parts.push(if lemma { &head.lemma } else { &head.word });
    Some(Term::constant(parts.join("_")))
}

fn is_named(t: &AnnotatedToken) -> bool {
    t.is_proper() || t.ner != crate::ingest::Ner::O
}

/// Appositive proper name of a common noun, if it has one.
pub(crate) fn appositive_name(s: &Sentence, i: usize) -> Option<usize> {
    if is_named(s.token(i)) {
        return None;
    }
    s.children_by(i, "appos").find(|&a| is_named(s.token(a)))
}

#[derive(Debug, thiserror::Error)]
pub enum KbError {
    #[error(transparent)]
    Program(#[from] ProgramError),
}

/// Runs every generator over one prepared sentence, in generator order.
pub fn compile_sentence(ps: &PreparedSentence) -> Vec<FactBatch> {
    let mut out = Vec::new();
    for r in &ps.regions {
        out.push(gen_event_facts(r, ps));
    }
    for r in &ps.regions {
        out.push(gen_property_facts(r, ps));
    }
    out.push(gen_modifier_facts(ps));
    out.push(gen_possess_facts(ps));
    out.push(gen_instance_facts(ps));
    out.push(gen_relation_facts(ps));
    out.push(gen_entity_facts(ps));
    out.push(gen_special_facts(ps));
    out
}

/// Compiles a document into a fact program: sentence order, then generator
/// order. Duplicate facts are kept once, at their first position.
pub fn compile_document(d: &AnnotatedDocument) -> Result<Program, KbError> {
    let prepared = prepare_document(d);
    let batches: Vec<Vec<FactBatch>> = prepared.par_iter().map(compile_sentence).collect();
    let mut program = Program::new();
    let mut seen: HashSet<Atom> = HashSet::new();
    for batch in batches.into_iter().flatten() {
        let prov = Provenance::Sentence(batch.source_sentence);
        for fact in batch.facts {
            if seen.insert(fact.clone()) {
                program.push(Rule::fact(fact), prov)?;
            }
        }
    }
    program.check_consistency()?;
    Ok(program)
}
