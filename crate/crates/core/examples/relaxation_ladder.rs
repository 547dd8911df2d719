//! Compiles a question into its four-class query ladder.
//!
//! Usage: `cargo run --example relaxation_ladder [fixtures/questions/<name>.json]`

use caspr::ingest::load_document;
use caspr::query::{compile_question, write_lpq, ExpansionTable};

fn main() -> anyhow::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/questions/abc_borough.json").to_string());
    let doc = load_document(&std::fs::read(&path)?)?;
    let (analysis, ladder) = compile_question(&doc, &ExpansionTable::default())?;
    println!(
        "% question_word={} type={} answer_word={} answer_type={}",
        analysis.question_word.as_deref().unwrap_or("null"),
        analysis.question_type,
        analysis.answer_word.as_deref().unwrap_or("null"),
        analysis.answer_type,
    );
    print!("{}", write_lpq(&ladder));
    Ok(())
}
