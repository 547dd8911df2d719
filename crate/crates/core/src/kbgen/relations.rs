use super::{lemma_const, FactBatch, PreparedSentence};
use crate::ir::Term;

/// `_relation/3` for adverbial and adjectival clauses, clausal complements
/// and conjunctions.
pub fn gen_relation_facts(ps: &PreparedSentence) -> FactBatch {
    let s = ps.sentence();
    let mut out = FactBatch::new(ps.index);
    let id = |i: usize| ps.region_at(i).map(|r| Term::Int(r.event_id as i64));
    for e in s.deps.iter().filter(|e| e.gov != 0) {
        let (gov, dep) = (id(e.gov), id(e.dep));
        let fact = match e.base() {
            "advcl" => gov.zip(dep).map(|(g, d)| (g, d, "_clause")),
            "acl" => dep.map(|d| (lemma_const(s.token(e.gov)), d, "_clause")),
            "ccomp" | "xcomp" => gov.zip(dep).map(|(g, d)| (g, d, "_clcomplement")),
            "conj" => match (gov, dep) {
                (Some(g), Some(d)) => Some((g, d, "_conj")),
                _ if s.token(e.gov).is_noun() && s.token(e.dep).is_noun() => {
                    Some((lemma_const(s.token(e.gov)), lemma_const(s.token(e.dep)), "_conj"))
                }
                _ => None,
            },
            _ => None,
        };
        if let Some((a, b, kind)) = fact {
            out.push("_relation", vec![a, b, Term::constant(kind)]);
        }
    }
    out
}
