use super::{Confidence, Query, QueryError, QueryLadder};
use crate::ir::Literal;

fn push_unique(class: &mut Vec<Query>, q: Query) {
    if !class.iter().any(|c| c.subgoals == q.subgoals) {
        class.push(q);
    }
}

/// Derives classes II to IV from class I: II drops ground subgoals, III
/// keeps subgoals mentioning the answer variable plus the base constraints,
/// IV keeps the base constraints alone. III and IV are deduplicated.
pub fn build_relaxation_ladder(class_one: Vec<Query>) -> Result<QueryLadder, QueryError> {
    if class_one.is_empty() {
        return Err(QueryError::NoQuery);
    }
    let mut ladder = QueryLadder::default();
    for q in &class_one {
        let derive = |keep: &dyn Fn(&Literal) -> bool, c: Confidence| {
            let subgoals = q.subgoals.iter().filter(|l| keep(l)).cloned().collect();
            Query::new(subgoals, &q.answer_var, q.base.clone(), c, q.variant_index)
        };
        let likely = derive(&|l| !l.atom.is_ground(), Confidence::Likely);
        ladder.classes[1].push(likely);
        let possible =
            derive(&|l| q.base.contains(l) || l.atom.vars().any(|v| v == q.answer_var), Confidence::Possible);
        push_unique(&mut ladder.classes[2], possible);
        push_unique(&mut ladder.classes[3], derive(&|l| q.base.contains(l), Confidence::Guess));
    }
    ladder.classes[0] = class_one;
    Ok(ladder)
}
