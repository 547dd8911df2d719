//! Word sense selection for `tree`: the preferred sense holds unless it is
//! denied, in which case the next one takes over.
//!
//! Usage: `cargo run --example wsd_tree`

use caspr::ir::{parse_program, print_program, Atom, Term};
use caspr::ontology::{build_ontology, load_lexicon, Lexicon};
use caspr::solver::{brute_force_models, Solver, DEFAULT_ATOM_BUDGET};

const LEXICON: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/lexicon.json");

fn main() -> anyhow::Result<()> {
    let full = load_lexicon(&std::fs::read(LEXICON)?)?;
    let lex = Lexicon { entries: full.entries.into_iter().filter(|(c, _)| c == "tree").collect() };
    let cases = ["tree(t1).", "tree(t1). -tree(t1, plant).", "tree(t1). -tree(t1, plant). -tree(t1, diagram)."];
    for (i, facts) in cases.into_iter().enumerate() {
        let program = build_ontology(&lex, &parse_program(facts)?)?;
        if i == 0 {
            print!("{}", print_program(&program));
        }
        let solver = Solver::new(&program)?;
        let chosen: Vec<&str> = ["plant", "diagram", "person"]
            .into_iter()
            .filter(|s| solver.holds(&Atom::new("tree", vec![Term::constant("t1"), Term::constant(*s)])).unwrap_or(false))
            .collect();
        let models = brute_force_models(&program, DEFAULT_ATOM_BUDGET)?;
        println!("{facts:<50} sense {chosen:?}, {} stable model(s)", models.len());
    }
    Ok(())
}
