//! Event regions: the part of a dependency graph governed by one trigger.

use std::collections::{BTreeSet, VecDeque};

use super::document::Sentence;

/// Auxiliary relations: their dependents are never triggers.
const AUX: [&str; 3] = ["aux", "auxpass", "cop"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionKind {
    Verbal,
    /// Created for a `cop` edge; `complement` is the copula's governor.
    Copula { complement: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventRegion {
    pub event_id: usize,
    pub trigger_token: usize,
    pub kind: RegionKind,
    pub member_tokens: BTreeSet<usize>,
}

impl EventRegion {
    /// The token the region hangs from: the verb, or the copula's complement.
    pub fn anchor(&self) -> usize {
        match self.kind {
            RegionKind::Verbal => self.trigger_token,
            RegionKind::Copula { complement } => complement,
        }
    }

    pub fn contains(&self, token: usize) -> bool {
        self.member_tokens.contains(&token)
    }
}

/// Segments a normalized sentence. Ids start at `first_id` and increase
/// left to right by trigger position.
pub fn segment_event_regions(s: &Sentence, first_id: usize) -> Vec<EventRegion> {
    let mut triggers: Vec<(usize, RegionKind)> = Vec::new();
    for t in &s.tokens {
        let incoming: Vec<&str> = s.parents(t.index).map(|e| e.base()).collect();
        if let Some(e) = s.parents(t.index).find(|e| e.rel == "cop") {
            triggers.push((t.index, RegionKind::Copula { complement: e.gov }));
        } else if t.is_verb() && !incoming.iter().any(|r| AUX.contains(r)) {
            triggers.push((t.index, RegionKind::Verbal));
        }
    }
    let anchors: Vec<usize> = triggers
        .iter()
        .map(|&(t, k)| match k {
            RegionKind::Verbal => t,
            RegionKind::Copula { complement } => complement,
        })
        .collect();

    triggers
        .iter()
        .zip(&anchors)
        .enumerate()
        .map(|(i, (&(trigger, kind), &anchor))| {
            let mut members = BTreeSet::from([anchor, trigger]);
            let mut queue = VecDeque::from([anchor]);
            while let Some(u) = queue.pop_front() {
                for e in s.children(u) {
                    if anchors.contains(&e.dep) || !members.insert(e.dep) {
                        continue;
                    }
                    queue.push_back(e.dep);
                }
            }
            EventRegion { event_id: first_id + i, trigger_token: trigger, kind, member_tokens: members }
        })
        .collect()
}

/// The region a token belongs to: the first region listing it as a member,
/// otherwise the region of its nearest governor.
pub fn region_of(s: &Sentence, regions: &[EventRegion], token: usize) -> Option<usize> {
    let mut cur = token;
    let mut visited = BTreeSet::new();
    loop {
        if let Some(r) = regions.iter().find(|r| r.contains(cur)) {
            return Some(r.event_id);
        }
        if !visited.insert(cur) {
            return None;
        }
        cur = s.parents(cur).find(|e| e.gov != 0)?.gov;
    }
}
