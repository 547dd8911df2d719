use super::{lemma_const, FactBatch, PreparedSentence};
use crate::ingest::{Ner, Piece};
use crate::ir::Term;

const MONTHS: [&str; 12] = [
    "january", "february", "march", "april", "may", "june", "july", "august", "september", "october", "november", "december",
];

const NUMBER_WORDS: [&str; 4] = ["million", "billion", "thousand", "hundred"];

/// Names that appositive concepts must not take over.
const RESERVED: [&str; 8] = ["event", "number", "day", "month", "year", "mentioned", "characteristics", "not"];

/// `concept(instance)` per named entity. Dates fold into `time`.
pub fn gen_entity_facts(ps: &PreparedSentence) -> FactBatch {
    let mut out = FactBatch::new(ps.index);
    for t in &ps.sentence().tokens {
        let concept = match t.ner {
            Ner::Person => "person",
            Ner::Location => "location",
            Ner::Organization => "organization",
            Ner::Date | Ner::Time => "time",
            Ner::Money => "money",
            Ner::Percent => "percent",
            Ner::Number | Ner::O => continue,
        };
        out.push(concept, vec![lemma_const(t)]);
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DateParts {
    pub day: Option<i64>,
    pub month: Option<String>,
    pub year: Option<i64>,
}

fn year(s: &str) -> Option<i64> {
    (s.len() == 4 && s.bytes().all(|b| b.is_ascii_digit())).then(|| s.parse().ok()).flatten()
}

fn day(s: &str) -> Option<i64> {
    s.parse().ok().filter(|d| (1..=31).contains(d))
}

fn month(s: &str) -> Option<String> {
    MONTHS.contains(&s).then(|| s.to_string())
}

/// Splits a normalized time constant of shape `d_month_yyyy`,
/// `month_d_yyyy` or `yyyy`.
pub fn parse_date_parts(text: &str) -> Option<DateParts> {
    let parts: Vec<&str> = text.split('_').collect();
    match parts.as_slice() {
        [y] => Some(DateParts { year: Some(year(y)?), ..Default::default() }),
        [a, b, y] => {
            let y = year(y)?;
            if let (Some(d), Some(m)) = (day(a), month(b)) {
                return Some(DateParts { day: Some(d), month: Some(m), year: Some(y) });
            }
            let (m, d) = (month(a)?, day(b)?);
            Some(DateParts { day: Some(d), month: Some(m), year: Some(y) })
        }
        _ => None,
    }
}

fn is_number_text(s: &str) -> bool {
    if NUMBER_WORDS.contains(&s) {
        return true;
    }
    let groups: Vec<&str> = s.split(',').collect();
    groups.iter().all(|g| !g.is_empty() && g.bytes().all(|b| b.is_ascii_digit()))
}

fn is_all_caps(s: &str) -> bool {
    s.chars().filter(|c| c.is_alphabetic()).count() >= 2
        && s.chars().all(|c| c.is_ascii_uppercase() || c.is_ascii_digit() || c == '&' || c == '.')
}

fn is_open(p: &Piece) -> bool {
    matches!(p, Piece::Punct(w) if w == "(" || w == "-LRB-")
}

fn is_close(p: &Piece) -> bool {
    matches!(p, Piece::Punct(w) if w == ")" || w == "-RRB-")
}

fn is_dash(p: &Piece) -> bool {
    matches!(p, Piece::Punct(w) if matches!(w.as_str(), "-" | "--" | "\u{2013}" | "\u{2014}"))
}

fn is_bare_predicate(s: &str) -> bool {
    s.starts_with(|c: char| c.is_ascii_lowercase())
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !RESERVED.contains(&s)
}

/// Time spans, date parts, appositive concepts, abbreviations and numbers.
pub fn gen_special_facts(ps: &PreparedSentence) -> FactBatch {
    let s = ps.sentence();
    let surface = &ps.normalized.surface;
    let mut out = FactBatch::new(ps.index);
    let tok = |p: &Piece| match p {
        Piece::Token(i) => Some(*i),
        Piece::Punct(_) => None,
    };
    let datelike = |i: usize| {
        let t = s.token(i);
        matches!(t.ner, Ner::Date | Ner::Time) || year(&t.lemma).is_some()
    };

    let layout = &ps.normalized.layout;
    for (k, piece) in layout.iter().enumerate() {
        let Some(entity) = tok(piece).filter(|&i| s.token(i).is_noun()) else { continue };
        // Skip a possessive marker between the entity and the bracket.
        let mut j = k + 1;
        if layout.get(j).and_then(tok).is_some_and(|i| s.token(i).pos == "POS") {
            j += 1;
        }
        let w = &layout[j.min(layout.len())..];
        let e = lemma_const(s.token(entity));
        if let [open, a, dash, b, close, ..] = w {
            if is_open(open) && is_dash(dash) && is_close(close) {
                if let (Some(a), Some(b)) = (tok(a), tok(b)) {
                    if datelike(a) && datelike(b) {
                        out.push("_start_date", vec![e.clone(), lemma_const(s.token(a))]);
                        out.push("_end_date", vec![e.clone(), lemma_const(s.token(b))]);
                    }
                }
            }
        }
        if let [open, a, close, ..] = w {
            if let (true, Some(a), true) = (is_open(open), tok(a), is_close(close)) {
                if is_all_caps(&surface[a - 1]) && !is_all_caps(&surface[entity - 1]) {
                    out.push("_abbreviation", vec![lemma_const(s.token(a)), e.clone()]);
                }
            }
        }
    }

    for t in &s.tokens {
        if matches!(t.ner, Ner::Date | Ner::Time) {
            if let Some(p) = parse_date_parts(&t.lemma) {
                let c = lemma_const(t);
                if let Some(d) = p.day {
                    out.push("day", vec![c.clone(), Term::Int(d)]);
                }
                if let Some(m) = p.month {
                    out.push("month", vec![c.clone(), Term::constant(m)]);
                }
                if let Some(y) = p.year {
                    out.push("year", vec![c, Term::Int(y)]);
                }
            }
        }
    }

    for e in s.deps.iter().filter(|e| e.rel == "appos" && e.gov != 0) {
        let (g, a) = (s.token(e.gov), s.token(e.dep));
        let named = |t: &crate::ingest::AnnotatedToken| t.is_proper() || t.ner != Ner::O;
        let common = |t: &crate::ingest::AnnotatedToken| t.pos.starts_with("NN") && !named(t);
        for (class, inst) in [(g, a), (a, g)] {
            if common(class) && named(inst) && is_bare_predicate(&class.lemma) {
                out.push(&class.lemma, vec![lemma_const(inst)]);
            }
        }
        let (gs, as_) = (&surface[e.gov - 1], &surface[e.dep - 1]);
        if named(g) && is_all_caps(as_) && !is_all_caps(gs) {
            out.push("_abbreviation", vec![lemma_const(a), lemma_const(g)]);
        } else if named(a) && is_all_caps(gs) && !is_all_caps(as_) {
            out.push("_abbreviation", vec![lemma_const(g), lemma_const(a)]);
        }
    }

    for t in &s.tokens {
        if (t.pos == "CD" || t.ner == Ner::Number) && !matches!(t.ner, Ner::Date | Ner::Time) && is_number_text(&t.lemma) {
            out.push("number", vec![lemma_const(t)]);
        }
    }
    out
}
