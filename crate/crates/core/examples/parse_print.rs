//! Parses a program and prints it back in canonical form with a
//! stratification summary.
//!
//! Usage: `cargo run --example parse_print [program.lp]`

use caspr::ir::{parse_program, print_program, stratification_check};

const DEMO: &str = "% @source sentence:1
bird(tweety). penguin(sam). bird(sam).
% @source manual
ab(X) :- penguin(X).
fly(X) :- bird(X), not ab(X).
_is(walt_disney_company, 'media company').
";

fn main() -> anyhow::Result<()> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => DEMO.to_string(),
    };
    let program = parse_program(&text)?;
    print!("{}", print_program(&program));
    let strata = stratification_check(&program)?;
    println!("% {} rules, {} facts, {} strata", program.len(), program.fact_count(), strata.max() + 1);
    for (pattern, stratum) in strata.iter() {
        println!("%   {stratum} {pattern}");
    }
    Ok(())
}
