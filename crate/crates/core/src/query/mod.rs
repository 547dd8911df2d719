//! Question compilation: analysis, query predicates, base constraints and
//! the four-class relaxation ladder.

mod analysis;
mod expansion;
mod ladder;
mod lpq;
mod variants;

use std::fmt;

use crate::ingest::AnnotatedDocument;
use crate::ir::{Literal, ParseError};

pub use analysis::{analyze_question, AnswerType, QuestionAnalysis, QuestionType};
pub use expansion::{Expansion, ExpansionTable};
pub use ladder::build_relaxation_ladder;
pub use lpq::{parse_lpq, write_lpq};
pub use variants::{combine_constraints, gen_base_constraints, gen_entity_query_subgoals, gen_event_query_variants, gen_property_query_subgoals};

#[derive(Debug, thiserror::Error)]
pub enum QueryError {
    #[error("question document has no sentence")]
    EmptyQuestion,
    #[error("question produced no class I query")]
    NoQuery,
    #[error("expansion table: {0}")]
    Expansions(String),
    #[error("ladder file line {line}: {reason}")]
    Lpq { line: usize, reason: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Confidence {
    Certain,
    Likely,
    Possible,
    Guess,
}

impl Confidence {
    pub const ALL: [Confidence; 4] = [Confidence::Certain, Confidence::Likely, Confidence::Possible, Confidence::Guess];

    pub fn label(self) -> &'static str {
        match self {
            Confidence::Certain => "certain",
            Confidence::Likely => "likely",
            Confidence::Possible => "possible",
            Confidence::Guess => "guess",
        }
    }

    /// Tag used in `.lpq` files.
    pub fn tag(self) -> &'static str {
        match self {
            Confidence::Certain => "classI",
            Confidence::Likely => "classII",
            Confidence::Possible => "classIII",
            Confidence::Guess => "classIV",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Confidence> {
        Confidence::ALL.into_iter().find(|c| c.tag() == tag)
    }
}

impl fmt::Display for Confidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One conjunctive query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub subgoals: Vec<Literal>,
    pub answer_var: String,
    /// Other named variables, in order of first occurrence.
    pub aux_vars: Vec<String>,
    pub confidence: Confidence,
    /// Index of the class I query this one was derived from.
    pub variant_index: usize,
    /// The base constraints among the subgoals.
    pub base: Vec<Literal>,
}

impl Query {
    pub fn new(subgoals: Vec<Literal>, answer_var: &str, base: Vec<Literal>, confidence: Confidence, variant_index: usize) -> Query {
        let mut aux_vars: Vec<String> = Vec::new();
        for v in subgoals.iter().flat_map(|l| l.atom.vars()) {
            if v != answer_var && !aux_vars.iter().any(|a| a == v) {
                aux_vars.push(v.to_string());
            }
        }
        Query { subgoals, answer_var: answer_var.to_string(), aux_vars, confidence, variant_index, base }
    }

    /// True when the answer variable occurs in a positive subgoal.
    pub fn is_safe(&self) -> bool {
        self.subgoals.iter().any(|l| !l.naf && l.atom.vars().any(|v| v == self.answer_var))
    }
}

impl fmt::Display for Query {
    /// `?- l1, l2.`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("?- ")?;
        f.write_str(&lpq::body_text(&self.subgoals))?;
        f.write_str(".")
    }
}

/// Queries grouped by confidence class, most confident first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QueryLadder {
    pub classes: [Vec<Query>; 4],
}

impl QueryLadder {
    pub fn class(&self, c: Confidence) -> &[Query] {
        &self.classes[c as usize]
    }

    /// All queries in trial order.
    pub fn iter(&self) -> impl Iterator<Item = &Query> {
        self.classes.iter().flatten()
    }

    pub fn answer_var(&self) -> Option<&str> {
        self.iter().next().map(|q| q.answer_var.as_str())
    }
}

/// Analysis plus ladder for one question document.
pub fn compile_question(q: &AnnotatedDocument, expansions: &ExpansionTable) -> Result<(QuestionAnalysis, QueryLadder), QueryError> {
    let a = analyze_question(q)?;
    let variants = gen_event_query_variants(&a);
    let mut extra = gen_property_query_subgoals(&a);
    extra.extend(gen_entity_query_subgoals(&a));
    let bases = gen_base_constraints(&a);
    let class_one = combine_constraints(&a, &variants, &extra, &bases, expansions);
    let ladder = build_relaxation_ladder(class_one)?;
    Ok((a, ladder))
}
