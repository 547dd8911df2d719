use super::{appositive_name, lemma_const, modified_form, FactBatch, PreparedSentence};
use crate::ingest::{RegionKind, Sentence};
use crate::ir::Term;

/// `_mod(head, modifier)` for adjectival, adverbial and numeric modifiers.
pub fn gen_modifier_facts(ps: &PreparedSentence) -> FactBatch {
    let s = ps.sentence();
    let mut out = FactBatch::new(ps.index);
    for e in &s.deps {
        if e.gov == 0 || !matches!(e.base(), "amod" | "advmod" | "nummod") {
            continue;
        }
        let dep = s.token(e.dep);
        if e.base() == "advmod" && dep.is_wh() {
            continue;
        }
        out.push("_mod", vec![lemma_const(s.token(e.gov)), lemma_const(dep)]);
    }
    out
}

/// `_possess(owner, owned)` per genitive, repeated for the owned noun's
/// appositive name.
pub fn gen_possess_facts(ps: &PreparedSentence) -> FactBatch {
    let s = ps.sentence();
    let mut out = FactBatch::new(ps.index);
    for e in s.deps.iter().filter(|e| e.rel == "nmod:poss" && e.gov != 0) {
        let owner = lemma_const(s.token(e.dep));
        out.push("_possess", vec![owner.clone(), lemma_const(s.token(e.gov))]);
        if let Some(a) = appositive_name(s, e.gov) {
            out.push("_possess", vec![owner, lemma_const(s.token(a))]);
        }
    }
    out
}

/// Bare lemma and, when modified, the modifier chain of a noun.
fn forms(s: &Sentence, i: usize) -> Vec<Term> {
    let mut v = vec![lemma_const(s.token(i))];
    v.extend(modified_form(s, i, true));
    v
}

/// Chain form of a noun if it is modified, otherwise its lemma.
fn fullest(s: &Sentence, i: usize) -> Term {
    modified_form(s, i, true).unwrap_or_else(|| lemma_const(s.token(i)))
}

/// `_is(instance, class)` from copulas (with conjoined complements) and from
/// `such as` / `like` comparisons.
pub fn gen_instance_facts(ps: &PreparedSentence) -> FactBatch {
    let s = ps.sentence();
    let mut out = FactBatch::new(ps.index);
    for r in &ps.regions {
        let RegionKind::Copula { complement } = r.kind else { continue };
        let Some(subj) = s.children_by(complement, "nsubj").next() else { continue };
        let subject = lemma_const(s.token(subj));
        let mut classes = vec![complement];
        classes.extend(s.children_by(complement, "conj"));
        for c in classes {
            for f in forms(s, c) {
                out.push("_is", vec![subject.clone(), f]);
            }
        }
    }
    for e in &s.deps {
        if e.gov == 0 || !is_comparison(s, &e.rel, e.dep) {
            continue;
        }
        let category = fullest(s, e.gov);
        for f in forms(s, e.dep) {
            out.push("_is", vec![f, category.clone()]);
        }
    }
    out
}

fn is_comparison(s: &Sentence, rel: &str, dep: usize) -> bool {
    matches!(rel, "nmod:such_as" | "nmod:like")
        || (rel.starts_with("nmod") && s.children_by(dep, "case").any(|c| matches!(s.token(c).lemma.as_str(), "such" | "like")))
}
