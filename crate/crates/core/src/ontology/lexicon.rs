use std::collections::{HashMap, HashSet};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::OntologyError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sense {
    #[serde(rename = "sense")]
    pub sense_id: String,
    /// Most specific first: `lion` -> `[feline, carnivore, mammal, animal]`.
    #[serde(default)]
    pub hypernyms: Vec<String>,
    #[serde(default)]
    pub gloss_keywords: Vec<String>,
}

/// Concepts with their senses, most used first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Lexicon {
    pub entries: IndexMap<String, Vec<Sense>>,
}

impl Lexicon {
    pub fn senses(&self, concept: &str) -> Option<&[Sense]> {
        self.entries.get(concept).map(Vec::as_slice)
    }

    pub fn contains(&self, concept: &str) -> bool {
        self.entries.contains_key(concept)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Rejects empty sense lists, malformed names and hypernym cycles, where
    /// the hypernym graph joins every concept to each chain's first element
    /// and every chain element to the next.
    pub fn validate(&self) -> Result<(), OntologyError> {
        let mut edges: HashMap<&str, Vec<&str>> = HashMap::new();
        for (concept, senses) in &self.entries {
            if !is_name(concept) {
                return Err(OntologyError::Schema { path: concept.clone(), reason: "concept must be a lowercase identifier".into() });
            }
            if senses.is_empty() {
                return Err(OntologyError::NoSenses { concept: concept.clone() });
            }
            for (i, s) in senses.iter().enumerate() {
                let path = format!("{concept}[{i}]");
                if s.sense_id.is_empty() {
                    return Err(OntologyError::Schema { path: format!("{path}.sense"), reason: "sense must be non-empty".into() });
                }
                if let Some(h) = s.hypernyms.iter().find(|h| !is_name(h)) {
                    return Err(OntologyError::Schema {
                        path: format!("{path}.hypernyms"),
                        reason: format!("`{h}` is not a lowercase identifier"),
                    });
                }
                let mut prev = concept.as_str();
                for h in &s.hypernyms {
                    edges.entry(prev).or_default().push(h);
                    prev = h;
                }
            }
        }
        if let Some(cycle) = find_cycle(&edges) {
            return Err(OntologyError::HypernymCycle { cycle });
        }
        Ok(())
    }
}

fn is_name(s: &str) -> bool {
    s.starts_with(|c: char| c.is_ascii_lowercase()) && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn find_cycle(edges: &HashMap<&str, Vec<&str>>) -> Option<Vec<String>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Active,
        Done,
    }
    let mut marks: HashMap<&str, Mark> = HashMap::new();
    let mut roots: Vec<&str> = edges.keys().copied().collect();
    roots.sort_unstable();
    for root in roots {
        if marks.contains_key(root) {
            continue;
        }
        // Iterative DFS keeping the active path.
        let mut path: Vec<(&str, usize)> = vec![(root, 0)];
        marks.insert(root, Mark::Active);
        while let Some((node, i)) = path.last_mut() {
            let next = edges.get(*node).and_then(|v| v.get(*i)).copied();
            *i += 1;
            match next {
                Some(n) => match marks.get(n) {
                    Some(Mark::Active) => {
                        let start = path.iter().position(|(p, _)| *p == n).unwrap_or(0);
                        let mut cycle: Vec<String> = path[start..].iter().map(|(p, _)| p.to_string()).collect();
                        cycle.push(n.to_string());
                        return Some(cycle);
                    }
                    Some(Mark::Done) => {}
                    None => {
                        marks.insert(n, Mark::Active);
                        path.push((n, 0));
                    }
                },
                None => {
                    marks.insert(node, Mark::Done);
                    path.pop();
                }
            }
        }
    }
    None
}

/// Parses and validates lexicon JSON.
pub fn load_lexicon(bytes: &[u8]) -> Result<Lexicon, OntologyError> {
    let de = &mut serde_json::Deserializer::from_slice(bytes);
    let lex: Lexicon = serde_path_to_error::deserialize(de)
        .map_err(|e| OntologyError::Schema { path: e.path().to_string(), reason: e.inner().to_string() })?;
    lex.validate()?;
    Ok(lex)
}

/// Every concept named in the lexicon, including hypernyms only.
pub fn all_concepts(lex: &Lexicon) -> HashSet<&str> {
    let mut out: HashSet<&str> = lex.entries.keys().map(String::as_str).collect();
    for senses in lex.entries.values() {
        for s in senses {
            out.extend(s.hypernyms.iter().map(String::as_str));
        }
    }
    out
}
