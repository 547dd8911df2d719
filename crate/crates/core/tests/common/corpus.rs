//! The three-article mini-corpus: passages, questions and compiled programs.

use std::path::Path;

use caspr::ingest::AnnotatedDocument;
use caspr::ir::{print_program, Program};
use caspr::ontology::{load_lexicon, Lexicon};
use caspr::pipeline::build_knowledge_base;

use super::{fixture, load};

pub const ARTICLES: [&str; 3] = ["american_broadcasting_company", "nikola_tesla", "super_bowl_50"];

pub fn lexicon() -> Lexicon {
    load_lexicon(&std::fs::read(fixture("lexicon.json")).unwrap()).unwrap()
}

pub fn article_kb(slug: &str) -> Program {
    let doc = load(&format!("corpus/articles/{slug}/passage.json"));
    build_knowledge_base(&doc, Some(&lexicon()), &[]).unwrap()
}

/// `(id, question)` pairs of one article, sorted by id.
pub fn questions(slug: &str) -> Vec<(String, AnnotatedDocument)> {
    let dir = fixture(&format!("corpus/articles/{slug}/questions"));
    let mut out: Vec<(String, AnnotatedDocument)> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| {
            let id = p.file_stem().unwrap().to_string_lossy().into_owned();
            let rel = format!("corpus/articles/{slug}/questions/{id}.json");
            (id, load(&rel))
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Lays out `<dir>/<slug>/kb.lp` and `<dir>/<slug>/questions/` for every
/// article.
pub fn write_kb_dir(dir: &Path) {
    for slug in ARTICLES {
        let qdir = dir.join(slug).join("questions");
        std::fs::create_dir_all(&qdir).unwrap();
        std::fs::write(dir.join(slug).join("kb.lp"), print_program(&article_kb(slug))).unwrap();
        let src = fixture(&format!("corpus/articles/{slug}/questions"));
        for e in std::fs::read_dir(src).unwrap() {
            let p = e.unwrap().path();
            std::fs::copy(&p, qdir.join(p.file_name().unwrap())).unwrap();
        }
    }
}
