//! `.lpq` ladder files: a `% answer X` header, then one query per line
//! tagged with its class.

use std::fmt::Write as _;

use super::{Confidence, Query, QueryError, QueryLadder};
use crate::ir::{parse_rules, Literal};

pub(crate) fn body_text(lits: &[Literal]) -> String {
    lits.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

pub fn write_lpq(ladder: &QueryLadder) -> String {
    let mut out = String::new();
    if let Some(x) = ladder.answer_var() {
        let _ = writeln!(out, "% answer {x}");
    }
    for q in ladder.iter() {
        let _ = writeln!(out, "{}: {}.", q.confidence.tag(), body_text(&q.subgoals));
    }
    out
}

pub fn parse_lpq(text: &str) -> Result<QueryLadder, QueryError> {
    let mut answer: Option<String> = None;
    let mut rows: Vec<(Confidence, Vec<Literal>)> = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let err = |reason: String| QueryError::Lpq { line: n + 1, reason };
        let line = line.trim();
        if let Some(x) = line.strip_prefix("% answer") {
            answer = Some(x.trim().to_string());
            continue;
        }
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let (tag, body) = line.split_once(':').ok_or_else(|| err("missing class tag".into()))?;
        let c = Confidence::from_tag(tag.trim()).ok_or_else(|| err(format!("unknown class `{}`", tag.trim())))?;
        let mut parsed = parse_rules(&format!(":- {}", body.trim())).map_err(|e| err(e.message))?;
        if parsed.len() != 1 {
            return Err(err("expected one query".into()));
        }
        rows.push((c, parsed.remove(0).0.body));
    }
    let answer = answer.ok_or(QueryError::Lpq { line: 1, reason: "missing `% answer` header".into() })?;
    let base: Vec<Literal> =
        rows.iter().filter(|(c, _)| *c == Confidence::Guess).flat_map(|(_, b)| b.iter().cloned()).collect();
    let mut ladder = QueryLadder::default();
    for (c, body) in rows {
        let class = &mut ladder.classes[c as usize];
        let own_base = body.iter().filter(|l| base.contains(l)).cloned().collect();
        let index = class.len();
        class.push(Query::new(body, &answer, own_base, c, index));
    }
    Ok(ladder)
}
