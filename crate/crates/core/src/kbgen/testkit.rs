//! Compact sentence builders for generator tests.

use super::{prepare_document, PreparedSentence};
use crate::ingest::{AnnotatedDocument, AnnotatedToken, DependencyEdge, Sentence};

/// Builds a one-sentence document from `(word, lemma, pos, ner)` tuples and
/// `(gov, dep, rel)` edges and prepares it, numbering regions from
/// `first_id`.
pub(crate) fn prepared(tokens: &[(&str, &str, &str, &str)], deps: &[(usize, usize, &str)], first_id: usize) -> PreparedSentence {
    let sentence = Sentence {
        tokens: tokens
            .iter()
            .enumerate()
            .map(|(i, &(w, l, p, n))| AnnotatedToken {
                index: i + 1,
                word: w.into(),
                lemma: l.into(),
                pos: p.into(),
                ner: n.to_string().into(),
            })
            .collect(),
        deps: deps.iter().map(|&(g, d, r)| DependencyEdge::new(g, d, r)).collect(),
    };
    let mut ps = prepare_document(&AnnotatedDocument { model: None, sentences: vec![sentence] }).remove(0);
    for r in &mut ps.regions {
        r.event_id += first_id - 1;
    }
    ps
}
