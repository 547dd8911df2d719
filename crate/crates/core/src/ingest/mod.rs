//! Annotated-document loading, token normalization and event-region
//! segmentation.

mod document;
mod normalize;
mod regions;

pub use document::{load_document, validate, AnnotatedDocument, AnnotatedToken, DependencyEdge, IngestError, Ner, Sentence};
pub use normalize::{constant_text, normalize_sentence, normalize_tokens, Normalized, Piece};
pub use regions::{region_of, segment_event_regions, EventRegion, RegionKind};

/// Segments every sentence of a normalized document, numbering regions
/// document-wide from 1.
pub fn segment_document(d: &AnnotatedDocument) -> Vec<Vec<EventRegion>> {
    let mut next = 1;
    d.sentences
        .iter()
        .map(|s| {
            let r = segment_event_regions(s, next);
            next += r.len();
            r
        })
        .collect()
}
