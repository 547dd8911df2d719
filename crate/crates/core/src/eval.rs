//! Dataset evaluation over SQuAD-style JSON with one compiled kb per
//! article.

use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ingest::load_document;
use crate::ir::parse_program;
use crate::pipeline::ask;
use crate::query::ExpansionTable;
use crate::solver::Solver;

#[derive(Clone, Debug, Default, Deserialize)]
pub struct Dataset {
    #[serde(default)]
    pub data: Vec<Article>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Article {
    pub title: String,
    #[serde(default)]
    pub paragraphs: Vec<Paragraph>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Paragraph {
    #[serde(default)]
    pub context: String,
    #[serde(default)]
    pub qas: Vec<QuestionItem>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct QuestionItem {
    pub id: String,
    pub question: String,
    #[serde(default)]
    pub answers: Vec<GoldAnswer>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct GoldAnswer {
    pub text: String,
}

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("dataset: {0}")]
    Dataset(#[from] serde_json::Error),
}

pub fn load_dataset(bytes: &[u8]) -> Result<Dataset, EvalError> {
    Ok(serde_json::from_slice(bytes)?)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArticleRow {
    pub name: String,
    pub correct: usize,
    pub total: usize,
    pub percent: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuestionRecord {
    pub article: String,
    pub id: String,
    pub question: String,
    pub answer: Option<String>,
    pub confidence: Option<String>,
    pub gold: Vec<String>,
    pub correct: bool,
    pub latency_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalReport {
    pub rows: Vec<ArticleRow>,
    pub totals: ArticleRow,
    /// Mean of the per-article percentages.
    pub average: f64,
    pub records: Vec<QuestionRecord>,
    pub warnings: Vec<String>,
}

pub const REFERENCE_FOOTER: &str = "reference: 77.76% average over 20 SQuAD dev articles";

pub fn round1(x: f64) -> f64 {
    (x * 10.0).round() / 10.0
}

pub fn percent(correct: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        round1(100.0 * correct as f64 / total as f64)
    }
}

/// Lowercase, underscores to spaces, punctuation and articles removed.
pub fn normalize_answer(s: &str) -> String {
    let cleaned: String = s
        .to_lowercase()
        .chars()
        .map(|c| if c == '_' || c == '-' { ' ' } else { c })
        .filter(|c| c.is_alphanumeric() || c.is_whitespace())
        .collect();
    cleaned.split_whitespace().filter(|w| !matches!(*w, "a" | "an" | "the")).collect::<Vec<_>>().join(" ")
}

/// Bidirectional substring match of normalized forms against any gold
/// answer.
pub fn answer_matches(answer: &str, gold: &[String]) -> bool {
    let a = normalize_answer(answer);
    !a.is_empty()
        && gold.iter().map(|g| normalize_answer(g)).any(|g| !g.is_empty() && (g.contains(&a) || a.contains(&g)))
}

/// Directory name for an article title.
pub fn article_slug(title: &str) -> String {
    let s: String = title.to_lowercase().chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    s.split('_').filter(|p| !p.is_empty()).collect::<Vec<_>>().join("_")
}

pub fn kb_path(kb_dir: &Path, title: &str) -> PathBuf {
    kb_dir.join(article_slug(title)).join("kb.lp")
}

pub fn question_path(kb_dir: &Path, title: &str, id: &str) -> PathBuf {
    kb_dir.join(article_slug(title)).join("questions").join(format!("{id}.json"))
}

impl EvalReport {
    pub fn from_records(rows_in: Vec<(String, Vec<QuestionRecord>)>, warnings: Vec<String>) -> EvalReport {
        let rows: Vec<ArticleRow> = rows_in
            .iter()
            .map(|(name, recs)| {
                let correct = recs.iter().filter(|r| r.correct).count();
                ArticleRow { name: name.clone(), correct, total: recs.len(), percent: percent(correct, recs.len()) }
            })
            .collect();
        let (correct, total) = rows.iter().fold((0, 0), |(c, t), r| (c + r.correct, t + r.total));
        // Averaged before rounding so the row rounding does not accumulate.
        let exact = |r: &ArticleRow| if r.total == 0 { 0.0 } else { 100.0 * r.correct as f64 / r.total as f64 };
        let average = if rows.is_empty() { 0.0 } else { round1(rows.iter().map(exact).sum::<f64>() / rows.len() as f64) };
        EvalReport {
            totals: ArticleRow { name: "total".into(), correct, total, percent: percent(correct, total) },
            rows,
            average,
            records: rows_in.into_iter().flat_map(|(_, r)| r).collect(),
            warnings,
        }
    }
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<32} {:>9} {:>8}", "article", "correct", "percent")?;
        for r in self.rows.iter().chain(std::iter::once(&self.totals)) {
            writeln!(f, "{:<32} {:>9} {:>7.1}%", r.name, format!("{}/{}", r.correct, r.total), r.percent)?;
        }
        writeln!(f, "{:<32} {:>9} {:>7.1}%", "average", "", self.average)?;
        writeln!(f, "{REFERENCE_FOOTER}")
    }
}

/// Evaluates every article that has a kb under `kb_dir`. Questions run in
/// parallel; records keep dataset order.
pub fn evaluate(ds: &Dataset, kb_dir: &Path, expansions: &ExpansionTable) -> EvalReport {
    let mut warnings = Vec::new();
    let mut rows = Vec::new();
    for article in &ds.data {
        let path = kb_path(kb_dir, &article.title);
        let program = match std::fs::read_to_string(&path).map_err(|e| e.to_string()).and_then(|t| parse_program(&t).map_err(|e| e.to_string())) {
            Ok(p) => p,
            Err(e) => {
                warnings.push(format!("skipping `{}`: {}: {e}", article.title, path.display()));
                continue;
            }
        };
        let solver = match Solver::new(&program) {
            Ok(s) => s,
            Err(e) => {
                warnings.push(format!("skipping `{}`: {e}", article.title));
                continue;
            }
        };
        let qas: Vec<&QuestionItem> = article.paragraphs.iter().flat_map(|p| &p.qas).collect();
        let records: Vec<(QuestionRecord, Option<String>)> = qas
            .par_iter()
            .map(|qa| {
                let gold: Vec<String> = qa.answers.iter().map(|a| a.text.clone()).collect();
                let mut rec = QuestionRecord {
                    article: article.title.clone(),
                    id: qa.id.clone(),
                    question: qa.question.clone(),
                    answer: None,
                    confidence: None,
                    gold,
                    correct: false,
                    latency_ms: 0.0,
                };
                let qpath = question_path(kb_dir, &article.title, &qa.id);
                let outcome = std::fs::read(&qpath)
                    .map_err(|e| format!("{}: {e}", qpath.display()))
                    .and_then(|b| load_document(&b).map_err(|e| e.to_string()))
                    .and_then(|d| ask(&solver, &d, expansions).map_err(|e| e.to_string()));
                match outcome {
                    Ok(o) => {
                        rec.latency_ms = o.latency.as_secs_f64() * 1e3;
                        rec.confidence = o.answer.as_ref().map(|a| a.confidence.label().to_string());
                        rec.answer = o.answer_text();
                        rec.correct = rec.answer.as_deref().is_some_and(|a| answer_matches(a, &rec.gold));
                        (rec, None)
                    }
                    Err(e) => (rec, Some(format!("question `{}`: {e}", qa.id))),
                }
            })
            .collect();
        let mut recs = Vec::with_capacity(records.len());
        for (r, w) in records {
            warnings.extend(w);
            recs.push(r);
        }
        rows.push((article.title.clone(), recs));
    }
    EvalReport::from_records(rows, warnings)
}
