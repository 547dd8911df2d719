//! Commonsense rules: sense disambiguation ladders and hypernym transfer
//! from a lexicon, similarity rules, and hand-written knowledge.

mod lexicon;
mod manual;
mod senses;
mod similar;

use std::collections::HashSet;

use indexmap::IndexMap;

pub use lexicon::{all_concepts, load_lexicon, Lexicon, Sense};
pub use manual::import_manual_knowledge;
pub use senses::{gen_hypernym_rules, gen_sense_characteristic_rules, gen_sense_preference_rules};
pub use similar::{gen_mentioned_facts, gen_similar_rules};

use crate::ir::{stratification_check, Atom, ParseError, Program, ProgramError, Provenance, Rule, StratificationError, Term};

#[derive(Debug, thiserror::Error)]
pub enum OntologyError {
    #[error("lexicon schema violation at `{path}`: {reason}")]
    Schema { path: String, reason: String },
    #[error("concept `{concept}` has no senses")]
    NoSenses { concept: String },
    #[error("hypernym cycle: {}", cycle.join(" -> "))]
    HypernymCycle { cycle: Vec<String> },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{line}:{column}: unsafe rule `{rule}`: variables {vars:?} need a positive body occurrence")]
    UnsafeManualRule { line: usize, column: usize, rule: String, vars: Vec<String> },
    #[error(transparent)]
    Program(#[from] ProgramError),
    #[error("generated rules are not stratified: {0}")]
    NotStratified(#[from] StratificationError),
}

/// Generated rules for one concept.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SenseRuleSet {
    pub concept: String,
    pub senses: Vec<String>,
    pub characteristic_rules: Vec<Rule>,
    pub preference_rules: Vec<Rule>,
    pub hypernym_rules: Vec<Rule>,
}

impl SenseRuleSet {
    pub fn build(concept: &str, senses: &[Sense]) -> Result<SenseRuleSet, OntologyError> {
        Ok(SenseRuleSet {
            concept: concept.to_string(),
            senses: senses.iter().map(|s| s.sense_id.clone()).collect(),
            characteristic_rules: gen_sense_characteristic_rules(concept, senses),
            preference_rules: gen_sense_preference_rules(concept, senses)?,
            hypernym_rules: senses.iter().flat_map(|s| gen_hypernym_rules(concept, s)).collect(),
        })
    }

    pub fn rules(&self) -> impl Iterator<Item = &Rule> {
        self.characteristic_rules.iter().chain(&self.preference_rules).chain(&self.hypernym_rules)
    }
}

const EVIDENCE: [&str; 3] = ["_mod", "_is", "_property"];

/// Instances per lexicon concept, in kb order: unary facts `c(x)` and
/// `_is(x, c)` facts.
fn instances<'a>(lex: &Lexicon, kb: &'a Program) -> IndexMap<String, Vec<(&'a Term, bool)>> {
    let mut out: IndexMap<String, Vec<(&Term, bool)>> = IndexMap::new();
    for f in kb.facts().filter(|f| !f.negated) {
        let (concept, inst, bridged) = match f.args.as_slice() {
            [x] if lex.contains(&f.predicate) => (f.predicate.clone(), x, false),
            [x, Term::Const(c)] if f.predicate == "_is" && lex.contains(c) => (c.clone(), x, true),
            _ => continue,
        };
        let list = out.entry(concept).or_default();
        if !list.iter().any(|(t, _)| *t == inst) {
            list.push((inst, bridged));
        }
    }
    out
}

/// Whether the kb ties `x` to one of the sense's keywords through a
/// modifier, instance or property fact.
fn has_characteristics(kb: &Program, x: &Term, sense: &Sense) -> bool {
    let keywords: HashSet<&str> = sense.gloss_keywords.iter().chain(&sense.hypernyms).map(String::as_str).collect();
    kb.facts().filter(|f| EVIDENCE.contains(&f.predicate.as_str()) && f.args.contains(x)).any(|f| {
        f.args.iter().any(|a| a != x && matches!(a, Term::Const(c) if keywords.contains(c.as_str())))
    })
}

/// Returns `kb` followed by the ontology rules for every lexicon concept the
/// kb has instances of: bridge facts `c(x)` for `_is(x, c)`, sense
/// characteristic facts, and each concept's [`SenseRuleSet`].
pub fn build_ontology(lex: &Lexicon, kb: &Program) -> Result<Program, OntologyError> {
    let mut out = kb.clone();
    let found = instances(lex, kb);
    let mut seen: HashSet<Rule> = kb.rules().iter().cloned().collect();
    let mut emit = |out: &mut Program, r: Rule| -> Result<(), OntologyError> {
        if seen.insert(r.clone()) {
            out.push(r, Provenance::Ontology)?;
        }
        Ok(())
    };
    for (concept, senses) in &lex.entries {
        let Some(insts) = found.get(concept) else { continue };
        for (x, bridged) in insts {
            if *bridged {
                emit(&mut out, Rule::fact(Atom::new(concept.as_str(), vec![(*x).clone()])))?;
            }
            for s in senses.iter().filter(|s| has_characteristics(kb, x, s)) {
                emit(&mut out, Rule::fact(Atom::new("characteristics", vec![Term::constant(&s.sense_id), (*x).clone()])))?;
            }
        }
        for r in SenseRuleSet::build(concept, senses)?.rules() {
            emit(&mut out, r.clone())?;
        }
    }
    stratification_check(&out)?;
    Ok(out)
}
