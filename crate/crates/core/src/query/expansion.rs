//! Trigger-verb expansions onto special predicates.

use serde::{Deserialize, Serialize};

use super::{QueryError, QuestionType};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expansion {
    /// Trigger verb lemma.
    pub verb: String,
    pub question_type: QuestionType,
    /// Binary predicate relating the actor to the answer.
    pub predicate: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionTable {
    pub expansions: Vec<Expansion>,
}

const DEFAULT_TABLE: &str = r#"{
  "expansions": [
    { "verb": "bear", "question_type": "WHEN", "predicate": "_start_date" },
    { "verb": "die", "question_type": "WHEN", "predicate": "_end_date" }
  ]
}"#;

impl Default for ExpansionTable {
    fn default() -> Self {
        ExpansionTable::from_json(DEFAULT_TABLE.as_bytes()).expect("built-in expansion table")
    }
}

impl ExpansionTable {
    pub fn from_json(bytes: &[u8]) -> Result<ExpansionTable, QueryError> {
        serde_json::from_slice(bytes).map_err(|e| QueryError::Expansions(e.to_string()))
    }

    pub fn lookup<'a>(&'a self, verb: &'a str, t: QuestionType) -> impl Iterator<Item = &'a Expansion> + 'a {
        self.expansions.iter().filter(move |e| e.verb == verb && e.question_type == t)
    }
}
