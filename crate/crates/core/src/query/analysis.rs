//! Question understanding: question word, question type, answer word and
//! expected answer type.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::QueryError;
use crate::ingest::{AnnotatedDocument, RegionKind};
use crate::kbgen::{prepare_document, PreparedSentence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum QuestionType {
    What,
    Where,
    Who,
    Which,
    When,
    HowMany,
    HowMuch,
    HowLong,
    HowFar,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AnswerType {
    Subject,
    Object,
    Place,
    Person,
    Time,
    Year,
    Day,
    Month,
    Number,
    Unknown,
    Variable,
}

impl fmt::Display for QuestionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = serde_json::to_value(self).map_err(|_| fmt::Error)?;
        f.write_str(v.as_str().unwrap_or_default())
    }
}

impl fmt::Display for AnswerType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = serde_json::to_value(self).map_err(|_| fmt::Error)?;
        f.write_str(v.as_str().unwrap_or_default())
    }
}

impl QuestionType {
    /// Expected answer type before the answer word is considered.
    pub fn expected_answer(self) -> AnswerType {
        match self {
            QuestionType::Where => AnswerType::Place,
            QuestionType::Who => AnswerType::Person,
            QuestionType::When => AnswerType::Time,
            QuestionType::HowMany | QuestionType::HowMuch | QuestionType::HowLong | QuestionType::HowFar => AnswerType::Number,
            QuestionType::What | QuestionType::Which => AnswerType::Variable,
            QuestionType::Unknown => AnswerType::Unknown,
        }
    }

    pub fn is_quantity(self) -> bool {
        self.expected_answer() == AnswerType::Number
    }
}

#[derive(Clone, Debug)]
pub struct QuestionAnalysis {
    /// Lemma of the Wh-word, or of the copula/modal fallback.
    pub question_word: Option<String>,
    pub question_type: QuestionType,
    /// Lemma of the focus noun, if any.
    pub answer_word: Option<String>,
    pub answer_type: AnswerType,
    /// Suffix shared by the query variables (`X2`, `E2`, ...).
    pub suffix: usize,
    pub(crate) sentence: PreparedSentence,
    pub(crate) wh_token: Option<usize>,
    pub(crate) focus_token: Option<usize>,
    /// Token whose slot the answer variable takes.
    pub(crate) answer_token: Option<usize>,
    /// Region the event variants are built from.
    pub(crate) main_region: Option<usize>,
}

fn wh_type(lemma: &str, next: Option<&str>) -> QuestionType {
    match lemma {
        "what" => QuestionType::What,
        "which" => QuestionType::Which,
        "who" | "whom" | "whose" => QuestionType::Who,
        "where" => QuestionType::Where,
        "when" => QuestionType::When,
        "how" => match next {
            Some("many") => QuestionType::HowMany,
            Some("much") => QuestionType::HowMuch,
            Some("long") => QuestionType::HowLong,
            Some("far") => QuestionType::HowFar,
            _ => QuestionType::Unknown,
        },
        _ => QuestionType::Unknown,
    }
}

/// Refines a variable answer type by the focus noun.
fn typed_by_word(word: &str) -> AnswerType {
    match word {
        "year" => AnswerType::Year,
        "day" => AnswerType::Day,
        "month" => AnswerType::Month,
        "date" | "time" => AnswerType::Time,
        _ => AnswerType::Variable,
    }
}

/// Analyzes the first sentence of a question document.
pub fn analyze_question(q: &AnnotatedDocument) -> Result<QuestionAnalysis, QueryError> {
    let sentence = prepare_document(q).into_iter().next().ok_or(QueryError::EmptyQuestion)?;
    let s = sentence.sentence();

    let wh_token = s.tokens.iter().find(|t| t.is_wh()).map(|t| t.index);
    let (question_word, question_type) = match wh_token {
        Some(w) => {
            let next = s.tokens.get(w).map(|t| t.lemma.as_str());
            (Some(s.token(w).lemma.clone()), wh_type(&s.token(w).lemma, next))
        }
        None => {
            let fallback = s.tokens.iter().find(|t| t.pos == "MD" || t.lemma == "be" || t.lemma == "do");
            (fallback.map(|t| t.lemma.clone()), QuestionType::Unknown)
        }
    };

    // Focus noun: governor of the Wh-determiner, or of `many`/`much`.
    let focus_token = wh_token.and_then(|w| {
        let target = if question_type.is_quantity() { w + 1 } else { w };
        if target > s.len() {
            return None;
        }
        s.parents(target)
            .find(|e| e.gov != 0 && matches!(e.base(), "det" | "amod" | "advmod") && s.token(e.gov).pos.starts_with("NN"))
            .map(|e| e.gov)
    });
    let answer_word = focus_token.map(|f| s.token(f).lemma.clone());

    let main_region = s
        .root()
        .and_then(|r| sentence.regions.iter().position(|g| g.anchor() == r))
        .or_else(|| (!sentence.regions.is_empty()).then_some(0));
    let actor_of_main = main_region.and_then(|i| {
        let r = &sentence.regions[i];
        let gov = match r.kind {
            RegionKind::Verbal => r.trigger_token,
            RegionKind::Copula { complement } => complement,
        };
        s.deps.iter().find(|e| e.gov == gov && matches!(e.rel.as_str(), "nsubj" | "nsubjpass" | "nsubj:xsubj")).map(|e| e.dep)
    });

    let answer_type = match question_type.expected_answer() {
        AnswerType::Variable => match &answer_word {
            Some(w) => typed_by_word(w),
            None if wh_token.is_some() && wh_token == actor_of_main => AnswerType::Subject,
            None => AnswerType::Object,
        },
        AnswerType::Unknown if answer_word.is_some() => AnswerType::Unknown,
        t => t,
    };
    let answer_token = if question_type.is_quantity() { None } else { focus_token.or(wh_token) };

    let trigger = main_region.map(|i| sentence.regions[i].trigger_token);
    let upto = trigger.unwrap_or(s.len());
    let suffix = s.tokens.iter().filter(|t| t.index <= upto && t.is_verb()).count().max(1);

    Ok(QuestionAnalysis {
        question_word,
        question_type,
        answer_word,
        answer_type,
        suffix,
        sentence,
        wh_token,
        focus_token,
        answer_token,
        main_region,
    })
}
