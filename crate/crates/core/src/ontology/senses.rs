//! Word-sense rule templates: characteristic rules, the preference ladder
//! and defeasible hypernym transfer.

use super::{OntologyError, Sense};
use crate::ir::{Atom, Literal, Rule, Term};

fn x() -> Term {
    Term::var("X")
}

fn instance(concept: &str) -> Literal {
    Literal::pos(Atom::new(concept, vec![x()]))
}

fn with_sense(concept: &str, sense: &str) -> Atom {
    Atom::new(concept, vec![x(), Term::constant(sense)])
}

fn denied(concept: &str, sense: &str) -> Atom {
    Atom::neg(concept, vec![x(), Term::constant(sense)])
}

/// `c(X, s) :- c(X), characteristics(s, X), not -c(X, s).` per sense.
pub fn gen_sense_characteristic_rules(concept: &str, senses: &[Sense]) -> Vec<Rule> {
    senses
        .iter()
        .map(|s| {
            let id = s.sense_id.as_str();
            Rule::new(
                with_sense(concept, id),
                vec![
                    instance(concept),
                    Literal::pos(Atom::new("characteristics", vec![Term::constant(id), x()])),
                    Literal::not(denied(concept, id)),
                ],
            )
        })
        .collect()
}

/// The preference ladder: sense `p` holds unless denied, once every earlier
/// sense is denied and no later sense holds.
pub fn gen_sense_preference_rules(concept: &str, senses: &[Sense]) -> Result<Vec<Rule>, OntologyError> {
    if senses.is_empty() {
        return Err(OntologyError::NoSenses { concept: concept.to_string() });
    }
    let ids: Vec<&str> = senses.iter().map(|s| s.sense_id.as_str()).collect();
    Ok(ids
        .iter()
        .enumerate()
        .map(|(p, id)| {
            let mut body = vec![instance(concept), Literal::not(denied(concept, id))];
            body.extend(ids[..p].iter().map(|e| Literal::pos(denied(concept, e))));
            body.extend(ids[p + 1..].iter().map(|l| Literal::not(with_sense(concept, l))));
            Rule::new(with_sense(concept, id), body)
        })
        .collect())
}

/// `h(X, s) :- c(X, s), not ab_h(X).` for each adjacent pair of the sense's
/// hypernym chain, starting at the concept itself.
pub fn gen_hypernym_rules(concept: &str, sense: &Sense) -> Vec<Rule> {
    let id = sense.sense_id.as_str();
    let mut lower = concept;
    let mut out = Vec::with_capacity(sense.hypernyms.len());
    for h in &sense.hypernyms {
        out.push(Rule::new(
            with_sense(h, id),
            vec![Literal::pos(with_sense(lower, id)), Literal::not(Atom::new(format!("ab_{h}"), vec![x()]))],
        ));
        lower = h;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn senses(ids: &[&str]) -> Vec<Sense> {
        ids.iter()
            .map(|s| Sense { sense_id: s.to_string(), hypernyms: vec![], gloss_keywords: vec![] })
            .collect()
    }

    #[test]
    fn tree_characteristic_rules() {
        let rules: Vec<String> =
            gen_sense_characteristic_rules("tree", &senses(&["plant", "diagram", "person"])).iter().map(ToString::to_string).collect();
        assert_eq!(
            rules,
            [
                "tree(X, plant) :- tree(X), characteristics(plant, X), not -tree(X, plant).",
                "tree(X, diagram) :- tree(X), characteristics(diagram, X), not -tree(X, diagram).",
                "tree(X, person) :- tree(X), characteristics(person, X), not -tree(X, person).",
            ]
        );
    }

    #[test]
    fn tree_preference_rules() {
        let rules: Vec<String> =
            gen_sense_preference_rules("tree", &senses(&["plant", "diagram", "person"])).unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(
            rules,
            [
                "tree(X, plant) :- tree(X), not -tree(X, plant), not tree(X, diagram), not tree(X, person).",
                "tree(X, diagram) :- tree(X), not -tree(X, diagram), -tree(X, plant), not tree(X, person).",
                "tree(X, person) :- tree(X), not -tree(X, person), -tree(X, plant), -tree(X, diagram).",
            ]
        );
    }

    #[test]
    fn degenerate_ladders() {
        let one = gen_sense_preference_rules("c", &senses(&["s1"])).unwrap();
        assert_eq!(one[0].to_string(), "c(X, s1) :- c(X), not -c(X, s1).");
        let two = gen_sense_preference_rules("c", &senses(&["s1", "s2"])).unwrap();
        assert_eq!(two[1].to_string(), "c(X, s2) :- c(X), not -c(X, s2), -c(X, s1).");
        assert!(gen_sense_preference_rules("c", &[]).is_err());
    }

    #[test]
    fn hypernym_chain() {
        let s = Sense {
            sense_id: "noun_animal".into(),
            hypernyms: ["feline", "carnivore", "mammal", "animal"].map(String::from).to_vec(),
            gloss_keywords: vec![],
        };
        let rules = gen_hypernym_rules("lion", &s);
        assert_eq!(rules.len(), 4);
        assert_eq!(rules[0].to_string(), "feline(X, noun_animal) :- lion(X, noun_animal), not ab_feline(X).");
        assert!(gen_hypernym_rules("c", &senses(&["s"])[0]).is_empty());
    }
}
