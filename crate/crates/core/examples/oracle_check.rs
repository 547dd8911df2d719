//! Compares the tabled solver with brute-force stable model enumeration on
//! every ground atom of a small program.
//!
//! Usage: `cargo run --example oracle_check [program.lp]`

use std::collections::BTreeSet;

use caspr::ir::parse_program;
use caspr::solver::{brute_force_models, ground_program, Solver, DEFAULT_ATOM_BUDGET};

const DEMO: &str = "
lion(simba). lion(nala). ab_mammal(nala).
lion(X, noun_animal) :- lion(X), not -lion(X, noun_animal).
feline(X, noun_animal) :- lion(X, noun_animal), not ab_feline(X).
mammal(X, noun_animal) :- feline(X, noun_animal), not ab_mammal(X).
";

fn main() -> anyhow::Result<()> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => DEMO.to_string(),
    };
    let program = parse_program(&text)?;
    let models = brute_force_models(&program, DEFAULT_ATOM_BUDGET)?;
    println!("{} stable model(s)", models.len());
    let [model] = models.as_slice() else {
        anyhow::bail!("the solver only answers programs with a unique stable model");
    };
    let solver = Solver::new(&program)?;
    let atoms: BTreeSet<_> = ground_program(&program).into_iter().filter_map(|r| r.head).collect();
    let mut disagreements = 0;
    for a in &atoms {
        let (solver_says, oracle_says) = (solver.holds(a)?, model.contains(a));
        if solver_says != oracle_says {
            disagreements += 1;
        }
        println!("{:<40} solver {solver_says:<5} oracle {oracle_says}", a.to_string());
    }
    println!("{} atoms, {disagreements} disagreement(s)", atoms.len());
    Ok(())
}
