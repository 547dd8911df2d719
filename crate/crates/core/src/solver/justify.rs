//! Justification trees: the first derivation of every answered subgoal.

use std::fmt::{self, Write as _};

use super::engine::{Engine, Step};
use crate::ir::{Literal, Program, Provenance};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Support {
    Fact { provenance: Provenance },
    Rule { index: usize, provenance: Provenance },
    /// A `not` subgoal whose atom finitely failed.
    FailedNaf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JustificationTree {
    pub node: Literal,
    pub support: Support,
    pub children: Vec<JustificationTree>,
}

impl JustificationTree {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &JustificationTree> {
        let mut stack = vec![self];
        std::iter::from_fn(move || {
            let t = stack.pop()?;
            stack.extend(t.children.iter().rev());
            Some(t)
        })
    }
}

/// The instantiated query and one tree per subgoal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Justification {
    pub query: Vec<Literal>,
    pub subgoals: Vec<JustificationTree>,
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Support::Fact { provenance } => write!(f, "fact, {provenance}"),
            Support::Rule { index, provenance } => write!(f, "rule {index}, {provenance}"),
            Support::FailedNaf => f.write_str("finitely failed"),
        }
    }
}

fn render(t: &JustificationTree, depth: usize, out: &mut String) {
    let _ = writeln!(out, "{:width$}{}  [{}]", "", t.node, t.support, width = depth * 2);
    for c in &t.children {
        render(c, depth + 1, out);
    }
}

impl fmt::Display for Justification {
    /// `?- query.` then an indented tree per subgoal.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q: Vec<String> = self.query.iter().map(ToString::to_string).collect();
        writeln!(f, "?- {}.", q.join(", "))?;
        let mut out = String::new();
        for t in &self.subgoals {
            render(t, 1, &mut out);
        }
        f.write_str(&out)
    }
}

pub(crate) fn build_tree(e: &Engine<'_>, p: &Program, step: &Step) -> JustificationTree {
    match step {
        Step::Failed(g) => JustificationTree { node: Literal::not(e.atom(g)), support: Support::FailedNaf, children: Vec::new() },
        Step::Proved(g) => {
            let d = e.derivations.get(g).expect("every proved atom has a derivation");
            let provenance = p.provenance(d.rule_index);
            let support = if d.body.is_empty() {
                Support::Fact { provenance }
            } else {
                Support::Rule { index: d.rule_index, provenance }
            };
            let children = d.body.iter().map(|s| build_tree(e, p, s)).collect();
            JustificationTree { node: Literal::pos(e.atom(g)), support, children }
        }
    }
}
