//! Compiles an annotated passage into knowledge-base facts.
//!
//! Usage: `cargo run --example compile_passage [fixtures/passages/<name>.json]`

use caspr::ingest::load_document;
use caspr::ir::print_program;
use caspr::kbgen::compile_document;

fn main() -> anyhow::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/passages/afc_champions.json").to_string());
    let doc = load_document(&std::fs::read(&path)?)?;
    let program = compile_document(&doc)?;
    print!("{}", print_program(&program));
    Ok(())
}
