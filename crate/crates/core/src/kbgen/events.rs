use super::{appositive_name, lemma_const, modified_form, word_const, FactBatch, PreparedSentence};
use crate::ingest::{EventRegion, RegionKind, Sentence};
use crate::ir::Term;

const ACTOR_RELS: [&str; 3] = ["nsubj", "nsubj:xsubj", "nsubjpass"];
const PARTICIPANT_RELS: [&str; 2] = ["dobj", "obj"];

fn first_child(s: &Sentence, gov: usize, rels: &[&str]) -> Option<usize> {
    rels.iter().find_map(|r| s.deps.iter().find(|e| e.gov == gov && e.rel == *r).map(|e| e.dep))
}

/// Role constant for a noun: its appositive name when it has one.
pub(crate) fn role_const(s: &Sentence, i: usize) -> Term {
    word_const(s.token(appositive_name(s, i).unwrap_or(i)))
}

/// Trigger constant, actor token and participant token of a region.
pub(crate) fn region_roles(region: &EventRegion, s: &Sentence) -> (Term, Option<usize>, Option<usize>) {
    match region.kind {
        RegionKind::Verbal => {
            let t = region.trigger_token;
            (lemma_const(s.token(t)), first_child(s, t, &ACTOR_RELS), first_child(s, t, &PARTICIPANT_RELS))
        }
        RegionKind::Copula { complement } => {
            (Term::constant("be"), first_child(s, complement, &ACTOR_RELS), Some(complement))
        }
    }
}

/// `event/4` for one region, plus one duplicate per modified role.
pub fn gen_event_facts(region: &EventRegion, ps: &PreparedSentence) -> FactBatch {
    let s = ps.sentence();
    let mut out = FactBatch::new(ps.index);
    let id = Term::Int(region.event_id as i64);
    let (trigger, actor, participant) = region_roles(region, s);
    let role = |i: Option<usize>| i.map_or_else(Term::null, |i| role_const(s, i));
    let (a, p) = (role(actor), role(participant));
    out.push("event", vec![id.clone(), trigger.clone(), a.clone(), p.clone()]);
    if let Some(m) = actor.and_then(|i| modified_form(s, i, false)) {
        out.push("event", vec![id.clone(), trigger.clone(), m, p.clone()]);
    }
    if let Some(m) = participant.and_then(|i| modified_form(s, i, false)) {
        out.push("event", vec![id, trigger, a, m]);
    }
    out
}

/// Relations whose nominal modifier is not a property.
pub(crate) fn skipped_nmod(s: &Sentence, rel: &str, dep: usize) -> bool {
    matches!(rel, "nmod:poss" | "nmod:such_as" | "nmod:like" | "nmod:tmod" | "nmod:npmod")
        || s.children_by(dep, "case").any(|c| matches!(s.token(c).lemma.as_str(), "such" | "like"))
}

/// Preposition marker of a nominal modifier edge.
pub(crate) fn preposition(s: &Sentence, rel: &str, dep: usize) -> Term {
    if rel == "nmod:agent" || rel == "obl:agent" {
        return Term::constant("_by");
    }
    let mut cases: Vec<usize> = s.children_by(dep, "case").collect();
    cases.sort_unstable();
    if !cases.is_empty() {
        let joined: Vec<&str> = cases.iter().map(|&c| s.token(c).lemma.as_str()).collect();
        return Term::constant(joined.join("_"));
    }
    match rel.split_once(':') {
        Some((_, sub)) => Term::constant(sub),
        None => Term::null(),
    }
}

/// `_property/4` for the nominal modifiers owned by one region: those of its
/// trigger, and those of nouns whose nearest region it is.
pub fn gen_property_facts(region: &EventRegion, ps: &PreparedSentence) -> FactBatch {
    let s = ps.sentence();
    let mut out = FactBatch::new(ps.index);
    let id = Term::Int(region.event_id as i64);
    for e in &s.deps {
        if !matches!(e.base(), "nmod" | "obl") || e.gov == 0 || skipped_nmod(s, &e.rel, e.dep) {
            continue;
        }
        let gov = s.token(e.gov);
        let modified = match region.kind {
            RegionKind::Verbal if e.gov == region.trigger_token => lemma_const(gov),
            _ if gov.is_noun() && owner(ps, e.gov) == Some(region.event_id) => lemma_const(gov),
            _ => continue,
        };
        out.push("_property", vec![id.clone(), modified, preposition(s, &e.rel, e.dep), lemma_const(s.token(e.dep))]);
    }
    out
}

/// Region a noun's properties attach to.
fn owner(ps: &PreparedSentence, noun: usize) -> Option<usize> {
    match ps.region_at(noun) {
        Some(r) => Some(r.event_id),
        None => ps.region_of(noun),
    }
}

#[cfg(test)]
mod tests {
    use super::super::testkit::prepared;
    use super::*;

    #[test]
    fn all_null_roles() {
        let ps = prepared(&[("rained", "rain", "VBD", "O")], &[(0, 1, "root")], 1);
        let b = gen_event_facts(&ps.regions[0], &ps);
        assert_eq!(b.facts[0].to_string(), "event(1, rain, null, null)");
    }

    #[test]
    fn passive_agent_is_by() {
        let ps = prepared(
            &[("Miitomo", "Miitomo", "NNP", "O"), ("was", "be", "VBD", "O"), ("introduced", "introduce", "VBN", "O"), ("by", "by", "IN", "O"), ("Nintendo", "Nintendo", "NNP", "ORGANIZATION")],
            &[(3, 1, "nsubjpass"), (3, 2, "auxpass"), (0, 3, "root"), (5, 4, "case"), (3, 5, "nmod:agent")],
            1,
        );
        let b = gen_property_facts(&ps.regions[0], &ps);
        assert_eq!(b.facts[0].to_string(), "_property(1, introduce, _by, nintendo)");
        let e = gen_event_facts(&ps.regions[0], &ps);
        assert_eq!(e.facts[0].to_string(), "event(1, introduce, miitomo, null)");
    }

    #[test]
    fn verb_without_modifiers_has_no_properties() {
        let ps = prepared(&[("ran", "run", "VBD", "O")], &[(0, 1, "root")], 1);
        assert!(gen_property_facts(&ps.regions[0], &ps).is_empty());
    }
}
