//! End-to-end plumbing: passage to knowledge base, question to answer.

use std::time::{Duration, Instant};

use crate::ingest::{AnnotatedDocument, IngestError};
use crate::ir::{stratification_check, ParseError, Program, ProgramError, Provenance, StratificationError};
use crate::kbgen::{compile_document, KbError};
use crate::ontology::{build_ontology, gen_mentioned_facts, gen_similar_rules, import_manual_knowledge, Lexicon, OntologyError};
use crate::query::{compile_question, ExpansionTable, QueryError, QueryLadder, QuestionAnalysis};
use crate::solver::{Answer, SolveError, Solver};

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Kb(#[from] KbError),
    #[error(transparent)]
    Ontology(#[from] OntologyError),
    #[error(transparent)]
    Program(#[from] ProgramError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    NotStratified(#[from] StratificationError),
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Compiles a passage into a complete program: kb facts, ontology rules
/// (when a lexicon is given), `mentioned/1` facts, similarity rules and
/// manual rules, in that order.
pub fn build_knowledge_base(doc: &AnnotatedDocument, lexicon: Option<&Lexicon>, manual: &[String]) -> Result<Program, PipelineError> {
    let kb = compile_document(doc)?;
    let mentioned = gen_mentioned_facts(&kb);
    let mut program = match lexicon {
        Some(lex) => build_ontology(lex, &kb)?,
        None => kb,
    };
    for r in mentioned.into_iter().chain(gen_similar_rules()) {
        program.push(r, Provenance::Plumbing)?;
    }
    for text in manual {
        for r in import_manual_knowledge(text)? {
            program.push(r, Provenance::Manual)?;
        }
    }
    stratification_check(&program)?;
    Ok(program)
}

/// The result of asking one question.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub analysis: QuestionAnalysis,
    pub ladder: QueryLadder,
    pub answer: Option<Answer>,
    pub latency: Duration,
}

impl Outcome {
    /// Text of the answer variable's binding.
    pub fn answer_text(&self) -> Option<String> {
        let a = self.answer.as_ref()?;
        let x = self.ladder.answer_var()?;
        a.value(x).and_then(|t| t.text())
    }

    /// `answer<TAB>confidence<TAB>latency_ms`, or `no-answer`.
    pub fn line(&self) -> String {
        match (&self.answer, self.answer_text()) {
            (Some(a), Some(text)) => format!("{text}\t{}\t{:.3}", a.confidence, self.latency.as_secs_f64() * 1e3),
            _ => "no-answer".to_string(),
        }
    }
}

/// Compiles a question and runs its ladder. Latency covers both steps.
pub fn ask(solver: &Solver<'_>, question: &AnnotatedDocument, expansions: &ExpansionTable) -> Result<Outcome, PipelineError> {
    let start = Instant::now();
    let (analysis, ladder) = compile_question(question, expansions)?;
    let answer = solver.solve_ladder(&ladder)?;
    Ok(Outcome { analysis, ladder, answer, latency: start.elapsed() })
}
