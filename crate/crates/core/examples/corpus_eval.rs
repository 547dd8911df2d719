//! Compiles the mini-corpus passages into a temporary kb directory and
//! prints the evaluation table.
//!
//! Usage: `cargo run --example corpus_eval`

use caspr::eval::{article_slug, evaluate, load_dataset};
use caspr::ingest::load_document;
use caspr::ir::print_program;
use caspr::ontology::load_lexicon;
use caspr::pipeline::build_knowledge_base;
use caspr::query::ExpansionTable;

const CORPUS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/corpus");
const LEXICON: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/lexicon.json");

fn main() -> anyhow::Result<()> {
    let dataset = load_dataset(&std::fs::read(format!("{CORPUS}/dataset.json"))?)?;
    let lexicon = load_lexicon(&std::fs::read(LEXICON)?)?;
    let kb_dir = std::env::temp_dir().join(format!("caspr-corpus-{}", std::process::id()));
    for article in &dataset.data {
        let slug = article_slug(&article.title);
        let src = format!("{CORPUS}/articles/{slug}");
        let out = kb_dir.join(&slug);
        std::fs::create_dir_all(out.join("questions"))?;
        let kb = build_knowledge_base(&load_document(&std::fs::read(format!("{src}/passage.json"))?)?, Some(&lexicon), &[])?;
        std::fs::write(out.join("kb.lp"), print_program(&kb))?;
        for entry in std::fs::read_dir(format!("{src}/questions"))? {
            let path = entry?.path();
            std::fs::copy(&path, out.join("questions").join(path.file_name().unwrap_or_default()))?;
        }
    }
    let report = evaluate(&dataset, &kb_dir, &ExpansionTable::default());
    for r in &report.records {
        println!("{:<18} {:<28} {}", r.id, r.answer.as_deref().unwrap_or("no-answer"), r.confidence.as_deref().unwrap_or("-"));
    }
    print!("{report}");
    std::fs::remove_dir_all(&kb_dir)?;
    Ok(())
}
