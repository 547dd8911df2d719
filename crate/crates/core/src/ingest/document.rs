use std::fmt;

use serde::{Deserialize, Serialize};

/// Named-entity tag. Tags outside the supported set load as `O`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(from = "String", into = "String")]
pub enum Ner {
    Person,
    Location,
    Organization,
    Money,
    Percent,
    Time,
    Date,
    Number,
    #[default]
    O,
}

impl From<String> for Ner {
    fn from(s: String) -> Ner {
        match s.as_str() {
            "PERSON" => Ner::Person,
            "LOCATION" | "CITY" | "COUNTRY" | "STATE_OR_PROVINCE" => Ner::Location,
            "ORGANIZATION" => Ner::Organization,
            "MONEY" => Ner::Money,
            "PERCENT" => Ner::Percent,
            "TIME" => Ner::Time,
            "DATE" => Ner::Date,
            "NUMBER" | "ORDINAL" => Ner::Number,
            _ => Ner::O,
        }
    }
}

impl From<Ner> for String {
    fn from(n: Ner) -> String {
        n.to_string()
    }
}

impl fmt::Display for Ner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ner::Person => "PERSON",
            Ner::Location => "LOCATION",
            Ner::Organization => "ORGANIZATION",
            Ner::Money => "MONEY",
            Ner::Percent => "PERCENT",
            Ner::Time => "TIME",
            Ner::Date => "DATE",
            Ner::Number => "NUMBER",
            Ner::O => "O",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedToken {
    /// 1-based position in the sentence.
    pub index: usize,
    pub word: String,
    pub lemma: String,
    pub pos: String,
    #[serde(default)]
    pub ner: Ner,
}

impl AnnotatedToken {
    pub fn is_verb(&self) -> bool {
        self.pos.starts_with("VB")
    }

    pub fn is_noun(&self) -> bool {
        self.pos.starts_with("NN") || self.pos == "PRP" || self.pos == "CD"
    }

    pub fn is_proper(&self) -> bool {
        self.pos.starts_with("NNP")
    }

    pub fn is_wh(&self) -> bool {
        matches!(self.pos.as_str(), "WDT" | "WP" | "WP$" | "WRB")
    }

    pub fn is_punct(&self) -> bool {
        matches!(self.pos.as_str(), "." | "," | ":" | "``" | "''" | "-LRB-" | "-RRB-" | "HYPH" | "NFP")
            || (!self.word.is_empty() && self.word.chars().all(|c| !c.is_alphanumeric()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DependencyEdge {
    /// Governor token index; 0 is ROOT.
    pub gov: usize,
    pub dep: usize,
    pub rel: String,
}

impl DependencyEdge {
    pub fn new(gov: usize, dep: usize, rel: impl Into<String>) -> Self {
        DependencyEdge { gov, dep, rel: rel.into() }
    }

    /// The relation without its subtype: `nmod:in` -> `nmod`.
    pub fn base(&self) -> &str {
        self.rel.split(':').next().unwrap_or(&self.rel)
    }

    /// The subtype: `nmod:in` -> `Some("in")`.
    pub fn subtype(&self) -> Option<&str> {
        self.rel.split_once(':').map(|(_, s)| s)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub tokens: Vec<AnnotatedToken>,
    #[serde(default)]
    pub deps: Vec<DependencyEdge>,
}

impl Sentence {
    /// Token by 1-based index.
    pub fn token(&self, index: usize) -> &AnnotatedToken {
        &self.tokens[index - 1]
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Outgoing edges of `gov`, in token order of the dependent.
    pub fn children(&self, gov: usize) -> Vec<&DependencyEdge> {
        let mut out: Vec<&DependencyEdge> = self.deps.iter().filter(|e| e.gov == gov).collect();
        out.sort_by_key(|e| e.dep);
        out
    }

    /// Dependents of `gov` whose relation (with subtype) is `rel` or whose
    /// base relation is `rel`.
    pub fn children_by<'a>(&'a self, gov: usize, rel: &'a str) -> impl Iterator<Item = usize> + 'a {
        self.deps
            .iter()
            .filter(move |e| e.gov == gov && (e.rel == rel || e.base() == rel))
            .map(|e| e.dep)
    }

    pub fn has_child(&self, gov: usize, rel: &str) -> bool {
        self.children_by(gov, rel).next().is_some()
    }

    /// Incoming edges of `dep`.
    pub fn parents(&self, dep: usize) -> impl Iterator<Item = &DependencyEdge> {
        self.deps.iter().filter(move |e| e.dep == dep)
    }

    pub fn root(&self) -> Option<usize> {
        self.deps.iter().find(|e| e.gov == 0).map(|e| e.dep)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedDocument {
    /// Annotator identifier recorded by the producer, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    pub sentences: Vec<Sentence>,
}

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("schema violation at `{path}`: {reason}")]
    Schema { path: String, reason: String },
    #[error("sentence {sentence}: edge {gov} -> {dep} references a missing token (sentence has {len} tokens)")]
    DanglingEdge { sentence: usize, gov: usize, dep: usize, len: usize },
    #[error("sentence {sentence}: {reason}")]
    Invalid { sentence: usize, reason: String },
}

/// Parses and validates a document.
///
/// Token indices must run 1..=n in order; every edge endpoint must name a
/// token (or 0 for ROOT as governor).
pub fn load_document(bytes: &[u8]) -> Result<AnnotatedDocument, IngestError> {
    let de = &mut serde_json::Deserializer::from_slice(bytes);
    let doc: AnnotatedDocument = serde_path_to_error::deserialize(de).map_err(|e| IngestError::Schema {
        path: e.path().to_string(),
        reason: e.inner().to_string(),
    })?;
    validate(&doc)?;
    Ok(doc)
}

pub fn validate(doc: &AnnotatedDocument) -> Result<(), IngestError> {
    for (si, s) in doc.sentences.iter().enumerate() {
        let sentence = si + 1;
        for (i, t) in s.tokens.iter().enumerate() {
            if t.index != i + 1 {
                return Err(IngestError::Invalid {
                    sentence,
                    reason: format!("token {} found at position {}; indices must run 1..n", t.index, i + 1),
                });
            }
            if t.lemma.is_empty() {
                return Err(IngestError::Schema {
                    path: format!("sentences[{si}].tokens[{i}].lemma"),
                    reason: "lemma must be non-empty".into(),
                });
            }
        }
        for (ei, e) in s.deps.iter().enumerate() {
            if e.dep == 0 || e.dep > s.len() || e.gov > s.len() {
                return Err(IngestError::DanglingEdge { sentence, gov: e.gov, dep: e.dep, len: s.len() });
            }
            if e.rel.is_empty() {
                return Err(IngestError::Schema {
                    path: format!("sentences[{si}].deps[{ei}].rel"),
                    reason: "relation must be non-empty".into(),
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const NASA: &str = r#"{"sentences":[{"tokens":[
        {"index":1,"word":"NASA","lemma":"NASA","pos":"NNP","ner":"ORGANIZATION"},
        {"index":2,"word":"carried","lemma":"carry","pos":"VBD","ner":"O"},
        {"index":3,"word":"out","lemma":"out","pos":"RP","ner":"O"},
        {"index":4,"word":"the","lemma":"the","pos":"DT","ner":"O"},
        {"index":5,"word":"Apollo","lemma":"Apollo","pos":"NNP","ner":"O"},
        {"index":6,"word":"program","lemma":"program","pos":"NN","ner":"O"}],
      "deps":[{"gov":2,"dep":1,"rel":"nsubj"},{"gov":0,"dep":2,"rel":"root"},
        {"gov":2,"dep":3,"rel":"compound:prt"},{"gov":6,"dep":4,"rel":"det"},
        {"gov":6,"dep":5,"rel":"compound"},{"gov":2,"dep":6,"rel":"dobj"}]}]}"#;

    #[test]
    fn loads_example_sentence() {
        let doc = load_document(NASA.as_bytes()).unwrap();
        assert_eq!(doc.sentences.len(), 1);
        assert_eq!(doc.sentences[0].tokens.len(), 6);
        assert_eq!(doc.sentences[0].deps.len(), 6);
        assert_eq!(doc.sentences[0].token(1).ner, Ner::Organization);
    }

    #[test]
    fn empty_document() {
        let doc = load_document(br#"{"sentences":[]}"#).unwrap();
        assert!(doc.sentences.is_empty());
    }

    #[test]
    fn dangling_edge() {
        let bad = NASA.replace(r#"{"gov":2,"dep":6,"rel":"dobj"}"#, r#"{"gov":2,"dep":99,"rel":"dobj"}"#);
        match load_document(bad.as_bytes()) {
            Err(IngestError::DanglingEdge { dep: 99, len: 6, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn schema_error_reports_path() {
        let bad = NASA.replace(r#""index":3,"#, r#""index":"three","#);
        match load_document(bad.as_bytes()) {
            Err(IngestError::Schema { path, .. }) => assert_eq!(path, "sentences[0].tokens[2].index"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_ner_tags_load_as_outside() {
        let doc = load_document(NASA.replace("ORGANIZATION", "MISC").as_bytes()).unwrap();
        assert_eq!(doc.sentences[0].token(1).ner, Ner::O);
    }
}
