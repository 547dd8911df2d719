//! Token normalization: lowercased constants, multi-token entity joining,
//! punctuation removal.

use std::collections::HashSet;

use super::document::{AnnotatedDocument, AnnotatedToken, DependencyEdge, Ner, Sentence};

/// One position of the original surface order after normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Piece {
    /// A normalized token (1-based index into the normalized sentence).
    Token(usize),
    /// A dropped punctuation token, kept for surface pattern matching.
    Punct(String),
}

#[derive(Clone, Debug)]
pub struct Normalized {
    pub sentence: Sentence,
    pub layout: Vec<Piece>,
    /// Original casing of each normalized token, words joined by spaces.
    pub surface: Vec<String>,
}

/// Lowercases and turns separators into underscores.
pub fn constant_text(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.trim().chars() {
        match c {
            ' ' | '\t' | '-' | '\u{2013}' | '\u{2014}' => out.push('_'),
            c => out.extend(c.to_lowercase()),
        }
    }
    out
}

fn joinable(n: Ner) -> bool {
    !matches!(n, Ner::O | Ner::Number)
}

struct Groups {
    parent: Vec<usize>,
}

impl Groups {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Normalizes one sentence and keeps its surface layout.
pub fn normalize_sentence(s: &Sentence) -> Normalized {
    let n = s.len();
    let punct: Vec<bool> = s.tokens.iter().map(AnnotatedToken::is_punct).collect();
    let mut groups = Groups { parent: (0..n).collect() };
    let mut absorbed: HashSet<usize> = HashSet::new();

    // Contiguous entity spans, allowing commas of the same tag inside.
    let mut last: Option<usize> = None;
    for i in 0..n {
        if punct[i] {
            continue;
        }
        if let Some(j) = last {
            let tag = s.tokens[i].ner;
            let inner_ok = (j + 1..i).all(|k| s.tokens[k].word == "," && s.tokens[k].ner == tag);
            if joinable(tag) && s.tokens[j].ner == tag && inner_ok {
                groups.union(j, i);
                absorbed.extend(j + 1..i);
            }
        }
        last = Some(i);
    }

    // Proper-noun compounds that are adjacent in the surface string.
    loop {
        let mut changed = false;
        for e in &s.deps {
            if e.rel != "compound" || e.gov == 0 {
                continue;
            }
            let (g, d) = (e.gov - 1, e.dep - 1);
            if !(s.tokens[g].is_proper() && s.tokens[d].is_proper()) {
                continue;
            }
            let span = |groups: &mut Groups, x: usize| {
                let r = groups.find(x);
                let members: Vec<usize> = (0..n).filter(|&k| groups.find(k) == r).collect();
                (members[0], *members.last().unwrap())
            };
            let (g_lo, g_hi) = span(&mut groups, g);
            let (d_lo, d_hi) = span(&mut groups, d);
            if (d_hi + 1 == g_lo || g_hi + 1 == d_lo) && groups.union(g, d) {
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    // Build new tokens in surface order.
    let mut new_index = vec![0usize; n];
    let mut tokens: Vec<AnnotatedToken> = Vec::new();
    let mut layout = Vec::new();
    let mut seen_roots: HashSet<usize> = HashSet::new();
    let mut surface = Vec::new();
    for i in 0..n {
        if punct[i] {
            if !absorbed.contains(&i) {
                layout.push(Piece::Punct(s.tokens[i].word.clone()));
            }
            continue;
        }
        let r = groups.find(i);
        if !seen_roots.insert(r) {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&k| !punct[k] && groups.find(k) == r).collect();
        let idx = tokens.len() + 1;
        for &m in &members {
            new_index[m] = idx;
        }
        tokens.push(merge(s, &members, idx));
        surface.push(members.iter().map(|&m| s.tokens[m].word.as_str()).collect::<Vec<_>>().join(" "));
        layout.push(Piece::Token(idx));
    }

    let mut seen = HashSet::new();
    let mut deps = Vec::new();
    for e in &s.deps {
        if punct[e.dep - 1] || (e.gov > 0 && punct[e.gov - 1]) {
            continue;
        }
        let gov = if e.gov == 0 { 0 } else { new_index[e.gov - 1] };
        let dep = new_index[e.dep - 1];
        if gov == dep {
            continue;
        }
        let edge = DependencyEdge::new(gov, dep, e.rel.clone());
        if seen.insert(edge.clone()) {
            deps.push(edge);
        }
    }
    Normalized { sentence: Sentence { tokens, deps }, layout, surface }
}

fn merge(s: &Sentence, members: &[usize], index: usize) -> AnnotatedToken {
    if let [only] = members {
        let t = &s.tokens[*only];
        return AnnotatedToken {
            index,
            word: constant_text(&t.word),
            lemma: constant_text(&t.lemma),
            pos: t.pos.clone(),
            ner: t.ner,
        };
    }
    // Head: the member not governed by another member.
    let in_group = |x: usize| members.contains(&(x - 1));
    let head = members
        .iter()
        .copied()
        .find(|&m| !s.deps.iter().any(|e| e.dep == m + 1 && e.gov > 0 && in_group(e.gov)))
        .unwrap_or(*members.last().unwrap());
    let word = members.iter().map(|&m| constant_text(&s.tokens[m].word)).collect::<Vec<_>>().join("_");
    AnnotatedToken {
        index,
        word: word.clone(),
        lemma: word,
        pos: s.tokens[head].pos.clone(),
        ner: s.tokens[members[0]].ner,
    }
}

/// Normalizes every sentence of a document. Idempotent.
pub fn normalize_tokens(d: &AnnotatedDocument) -> AnnotatedDocument {
    AnnotatedDocument {
        model: d.model.clone(),
        sentences: d.sentences.iter().map(|s| normalize_sentence(s).sentence).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tok(index: usize, word: &str, lemma: &str, pos: &str, ner: Ner) -> AnnotatedToken {
        AnnotatedToken { index, word: word.into(), lemma: lemma.into(), pos: pos.into(), ner }
    }

    #[test]
    fn joins_compound_organization() {
        let s = Sentence {
            tokens: vec![
                tok(1, "Denver", "Denver", "NNP", Ner::Organization),
                tok(2, "Broncos", "Broncos", "NNPS", Ner::Organization),
                tok(3, "won", "win", "VBD", Ner::O),
            ],
            deps: vec![
                DependencyEdge::new(2, 1, "compound"),
                DependencyEdge::new(3, 2, "nsubj"),
                DependencyEdge::new(0, 3, "root"),
            ],
        };
        let n = normalize_sentence(&s).sentence;
        assert_eq!(n.tokens.len(), 2);
        assert_eq!(n.tokens[0].word, "denver_broncos");
        assert_eq!(n.deps, vec![DependencyEdge::new(2, 1, "nsubj"), DependencyEdge::new(0, 2, "root")]);
    }

    #[test]
    fn date_span_with_comma() {
        let s = Sentence {
            tokens: vec![
                tok(1, "on", "on", "IN", Ner::O),
                tok(2, "February", "February", "NNP", Ner::Date),
                tok(3, "7", "7", "CD", Ner::Date),
                tok(4, ",", ",", ",", Ner::Date),
                tok(5, "2016", "2016", "CD", Ner::Date),
                tok(6, ",", ",", ",", Ner::O),
            ],
            deps: vec![DependencyEdge::new(2, 1, "case")],
        };
        let n = normalize_sentence(&s);
        assert_eq!(n.sentence.tokens[1].word, "february_7_2016");
        assert_eq!(n.layout, vec![Piece::Token(1), Piece::Token(2), Piece::Punct(",".into())]);
    }

    #[test]
    fn numbers_are_not_joined() {
        let s = Sentence {
            tokens: vec![tok(1, "45", "45", "CD", Ner::Number), tok(2, "million", "million", "CD", Ner::Number)],
            deps: vec![],
        };
        assert_eq!(normalize_sentence(&s).sentence.tokens.len(), 2);
    }

    #[test]
    fn single_token_unchanged_and_idempotent() {
        let s = Sentence { tokens: vec![tok(1, "nasa", "nasa", "NNP", Ner::Organization)], deps: vec![] };
        let once = normalize_sentence(&s).sentence;
        assert_eq!(once, s);
        assert_eq!(normalize_sentence(&once).sentence, once);
    }

    #[test]
    fn common_noun_compounds_stay_apart() {
        let s = Sentence {
            tokens: vec![tok(1, "Super_Bowl", "Super_Bowl", "NNP", Ner::O), tok(2, "title", "title", "NN", Ner::O)],
            deps: vec![DependencyEdge::new(2, 1, "compound")],
        };
        assert_eq!(normalize_sentence(&s).sentence.tokens.len(), 2);
    }
}
