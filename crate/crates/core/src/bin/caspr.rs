use std::io::{BufRead, Write as _};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode, Stdio};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use caspr::eval::{evaluate, load_dataset};
use caspr::ingest::{load_document, AnnotatedDocument};
use caspr::ir::{parse_program, print_program, Program};
use caspr::ontology::load_lexicon;
use caspr::pipeline::{ask, build_knowledge_base, Outcome};
use caspr::query::{write_lpq, ExpansionTable, Query};
use caspr::solver::{emit_lp, Solver};

#[derive(Parser)]
#[command(name = "caspr", version, about = "Answer questions over passages compiled to answer set programs")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compile an annotated passage into a program file.
    Compile {
        #[arg(long)]
        parse: PathBuf,
        #[arg(long, env = "CASPR_LEXICON")]
        lexicon: Option<PathBuf>,
        #[arg(long)]
        manual: Vec<PathBuf>,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Answer questions against a compiled program.
    Ask {
        #[arg(long)]
        kb: PathBuf,
        #[arg(long, conflicts_with_all = ["interactive", "raw"])]
        question: Option<PathBuf>,
        /// Read question parse file paths from stdin, one per line.
        #[arg(long, conflicts_with = "raw")]
        interactive: bool,
        /// Raw question text, annotated by `caspr-annotate`.
        #[arg(long)]
        raw: Option<String>,
        #[arg(long)]
        explain: bool,
        /// Print the program and the question's queries instead of solving.
        #[arg(long)]
        emit_lp: bool,
        #[arg(long)]
        expansions: Option<PathBuf>,
    },
    /// Evaluate a SQuAD-style dataset against per-article programs.
    Eval {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        kb_dir: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        expansions: Option<PathBuf>,
    },
    /// Show the analysis, ladder, answer and justification for a question.
    Explain {
        #[arg(long)]
        kb: PathBuf,
        #[arg(long)]
        question: PathBuf,
    },
}

/// Exit status for a run that found no answer.
const NO_ANSWER: u8 = 1;
const INPUT_ERROR: u8 = 2;

fn read_document(path: &Path) -> Result<AnnotatedDocument> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    load_document(&bytes).with_context(|| format!("loading {}", path.display()))
}

fn read_program(path: &Path) -> Result<Program> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_program(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_expansions(path: Option<&Path>) -> Result<ExpansionTable> {
    match path {
        None => Ok(ExpansionTable::default()),
        Some(p) => Ok(ExpansionTable::from_json(&std::fs::read(p)?)?),
    }
}

/// Runs the annotator over raw question text.
fn annotate(text: &str) -> Result<AnnotatedDocument> {
    let bin = std::env::var("CASPR_ANNOTATE").unwrap_or_else(|_| "caspr-annotate".into());
    let mut child = Command::new(&bin)
        .args(["--in", "-", "--out", "-", "--question"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .with_context(|| format!("running `{bin}`; install the annotator or pass --question"))?;
    child.stdin.take().context("annotator stdin")?.write_all(text.as_bytes())?;
    let out = child.wait_with_output()?;
    if !out.status.success() {
        bail!("`{bin}` exited with {}", out.status);
    }
    Ok(load_document(&out.stdout)?)
}

fn print_outcome(o: &Outcome, explain: bool) {
    println!("{}", o.line());
    if let (true, Some(a)) = (explain, &o.answer) {
        print!("{}", a.justification);
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Cmd::Compile { parse, lexicon, manual, out } => {
            let doc = read_document(&parse)?;
            let lex = lexicon.map(|p| -> Result<_> { Ok(load_lexicon(&std::fs::read(&p)?)?) }).transpose()?;
            let manual: Vec<String> = manual.iter().map(std::fs::read_to_string).collect::<Result<_, _>>()?;
            let program = build_knowledge_base(&doc, lex.as_ref(), &manual)?;
            std::fs::write(&out, print_program(&program))?;
            println!("facts: {}, rules: {}", program.fact_count(), program.len() - program.fact_count());
            Ok(0)
        }
        Cmd::Ask { kb, question, interactive, raw, explain, emit_lp: emit, expansions } => {
            let program = read_program(&kb)?;
            let solver = Solver::new(&program)?;
            let table = read_expansions(expansions.as_deref())?;
            let questions: Vec<AnnotatedDocument> = match (question, raw) {
                (Some(q), _) => vec![read_document(&q)?],
                (None, Some(text)) => vec![annotate(&text)?],
                (None, None) if interactive => {
                    let mut status = 0;
                    for line in std::io::stdin().lock().lines() {
                        let line = line?;
                        if line.trim().is_empty() {
                            continue;
                        }
                        match read_document(Path::new(line.trim())).and_then(|d| Ok(ask(&solver, &d, &table)?)) {
                            Ok(o) => print_outcome(&o, explain),
                            Err(e) => {
                                eprintln!("error: {e:#}");
                                status = INPUT_ERROR;
                            }
                        }
                    }
                    return Ok(status);
                }
                (None, None) => bail!("one of --question, --interactive or --raw is required"),
            };
            let mut status = 0;
            for q in &questions {
                let o = ask(&solver, q, &table)?;
                if emit {
                    let queries: Vec<&Query> = o.ladder.iter().collect();
                    print!("{}", emit_lp(&program, &queries));
                    continue;
                }
                print_outcome(&o, explain);
                if o.answer.is_none() {
                    status = NO_ANSWER;
                }
            }
            Ok(status)
        }
        Cmd::Eval { dataset, kb_dir, json, expansions } => {
            let ds = load_dataset(&std::fs::read(&dataset).with_context(|| format!("reading {}", dataset.display()))?)?;
            let report = evaluate(&ds, &kb_dir, &read_expansions(expansions.as_deref())?);
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            print!("{report}");
            if let Some(path) = json {
                std::fs::write(path, serde_json::to_string_pretty(&report)?)?;
            }
            Ok(0)
        }
        Cmd::Explain { kb, question } => {
            let program = read_program(&kb)?;
            let solver = Solver::new(&program)?;
            let o = ask(&solver, &read_document(&question)?, &ExpansionTable::default())?;
            let a = &o.analysis;
            println!(
                "question_word: {}\nquestion_type: {}\nanswer_word: {}\nanswer_type: {}",
                a.question_word.as_deref().unwrap_or("null"),
                a.question_type,
                a.answer_word.as_deref().unwrap_or("null"),
                a.answer_type
            );
            print!("{}", write_lpq(&o.ladder));
            print_outcome(&o, true);
            Ok(if o.answer.is_some() { 0 } else { NO_ANSWER })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
