//! Builds a knowledge base from a passage and answers a question against it,
//! printing the answer line and its justification.
//!
//! Usage: `cargo run --example ask [passage.json question.json]`

use caspr::ingest::load_document;
use caspr::ontology::load_lexicon;
use caspr::pipeline::{ask, build_knowledge_base};
use caspr::query::ExpansionTable;
use caspr::solver::Solver;

const ROOT: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (passage, question) = match args.as_slice() {
        [p, q] => (p.clone(), q.clone()),
        _ => (
            format!("{ROOT}/corpus/articles/nikola_tesla/passage.json"),
            format!("{ROOT}/corpus/articles/nikola_tesla/questions/tesla_born.json"),
        ),
    };
    let lexicon = load_lexicon(&std::fs::read(format!("{ROOT}/lexicon.json"))?)?;
    let kb = build_knowledge_base(&load_document(&std::fs::read(passage)?)?, Some(&lexicon), &[])?;
    let solver = Solver::new(&kb)?;
    let outcome = ask(&solver, &load_document(&std::fs::read(question)?)?, &ExpansionTable::default())?;
    println!("{}", outcome.line());
    if let Some(answer) = &outcome.answer {
        print!("{}", answer.justification);
    }
    Ok(())
}
