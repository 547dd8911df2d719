//! Frozen expectations for knowledge-base facts and generated queries.

use std::collections::BTreeSet;

use caspr::ir::{Atom, Term};
use caspr::kbgen::compile_document;
use caspr::query::{build_relaxation_ladder, compile_question, Confidence, ExpansionTable, Query};

use super::{conjunction, embeds, load, same_queries};

pub struct FactCase {
    pub fixture: &'static str,
    pub listed: &'static [&'static str],
    /// Predicates whose emitted facts must equal the listed ones exactly.
    pub exact: &'static [&'static str],
}

pub const FACT_CASES: &[FactCase] = &[
    FactCase { fixture: "nasa", listed: &["event(1, carry, nasa, program)", "organization(nasa)"], exact: &["event"] },
    FactCase {
        fixture: "miitomo",
        listed: &[
            "event(1, introduce, nintendo, miitomo)",
            "event(2, feature, miitomo, avatar_system)",
            "event(3, let, miitomo, null)",
            "event(4, communicate, users, null)",
            "event(5, exchange, null, information)",
            "_is(movie, personal_information)",
            "_is(favorite_movie, personal_information)",
        ],
        exact: &["_is"],
    },
    FactCase {
        fixture: "afc_champions",
        listed: &[
            "event(1, defeat, denver_broncos, carolina_panthers)",
            "event(2, earn, afc, title)",
            "event(2, earn, afc, third_super_bowl_title)",
            "_possess(american_football_conference, team)",
            "_possess(national_football_conference, team)",
            "_possess(american_football_conference, denver_broncos)",
            "_possess(national_football_conference, carolina_panthers)",
            "_relation(1, 2, _clause)",
            "_abbreviation(afc, american_football_conference)",
            "_abbreviation(nfc, national_football_conference)",
            "team(denver_broncos)",
        ],
        exact: &["event", "_possess", "_relation", "_abbreviation"],
    },
    FactCase {
        fixture: "game_venue",
        listed: &[
            "_property(2, play, on, 'february_7_2016')",
            "_property(2, play, at, levis_stadium)",
            "_property(2, play, in, san_francisco_bay_area)",
            "_property(2, play, at, santa_clara)",
            "_property(2, santa_clara, in, california)",
        ],
        exact: &["_property"],
    },
    FactCase {
        fixture: "amazon",
        listed: &["_mod(forest, broadleafed)", "_mod(forest, moist)", "_mod(know, also)"],
        exact: &["_mod"],
    },
    FactCase {
        fixture: "tesla",
        listed: &[
            "_is(nikola_tesla, inventor)",
            "_is(nikola_tesla, serbian_american_inventor)",
            "_is(nikola_tesla, electrical_engineer)",
            "_is(nikola_tesla, futurist)",
        ],
        exact: &[],
    },
    FactCase {
        fixture: "abc_network",
        listed: &[
            "_relation(american_broadcasting_company, 1, _clause)",
            "event(1, stylize, null, null)",
            "_abbreviation(abc, american_broadcasting_company)",
        ],
        exact: &["_relation", "_abbreviation"],
    },
    FactCase {
        fixture: "rankine",
        listed: &["_relation(1, 2, _clcomplement)", "event(1, use, null, null)", "event(2, analyze, null, process)"],
        exact: &[],
    },
    FactCase {
        fixture: "water_boiler",
        listed: &["_relation(2, 3, _conj)", "event(2, heat, water, null)", "event(3, transform, water, null)"],
        exact: &[],
    },
    FactCase {
        fixture: "gemini_span",
        listed: &["_start_date(project_gemini, 1962)", "_end_date(project_gemini, 1966)"],
        exact: &["_start_date", "_end_date"],
    },
    FactCase {
        fixture: "luther_birth",
        listed: &["day('10_november_1483', 10)", "month('10_november_1483', november)", "year('10_november_1483', 1483)"],
        exact: &["day", "month", "year"],
    },
    FactCase { fixture: "jim_brother", listed: &["brother(sam)"], exact: &["brother"] },
    FactCase { fixture: "kenya", listed: &["number('581,309')", "number(45)", "number(million)"], exact: &["number"] },
    FactCase { fixture: "twitter_sf", listed: &["location(san_francisco)", "organization(twitter)"], exact: &["location"] },
];

fn atom(text: &str) -> Atom {
    conjunction(text).remove(0).atom
}

fn event_id(a: &Atom) -> Option<(&Term, &Term)> {
    (a.predicate == "event" && a.args.len() == 4).then(|| (&a.args[0], &a.args[1]))
}

pub fn check_fact_case(case: &FactCase) -> Result<(), String> {
    let doc = load(&format!("passages/{}.json", case.fixture));
    let program = compile_document(&doc).map_err(|e| format!("{}: {e}", case.fixture))?;
    let emitted: BTreeSet<Atom> = program.facts().cloned().collect();
    let listed: BTreeSet<Atom> = case.listed.iter().map(|t| atom(t)).collect();
    if let Some(missing) = listed.iter().find(|a| !emitted.contains(a)) {
        return Err(format!("{}: missing {missing}", case.fixture));
    }
    if let Some(a) = emitted.iter().find(|a| emitted.contains(&a.complement())) {
        return Err(format!("{}: both {a} and {}", case.fixture, a.complement()));
    }
    for l in listed.iter().filter_map(event_id) {
        if let Some(bad) = emitted.iter().find(|e| event_id(e).is_some_and(|(id, v)| id == l.0 && v != l.1)) {
            return Err(format!("{}: event id {} reused by {bad}", case.fixture, l.0));
        }
    }
    for family in case.exact {
        let got: BTreeSet<&Atom> = emitted.iter().filter(|a| a.predicate == *family).collect();
        let want: BTreeSet<&Atom> = listed.iter().filter(|a| a.predicate == *family).collect();
        if got != want {
            let show = |s: &BTreeSet<&Atom>| s.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
            return Err(format!("{}: {family} family is [{}], expected [{}]", case.fixture, show(&got), show(&want)));
        }
    }
    Ok(())
}

pub fn check_golden_predicates() -> Result<(), String> {
    FACT_CASES.iter().try_for_each(check_fact_case)
}

pub struct QueryCase {
    pub fixture: &'static str,
    /// Complete listings per class; `None` leaves a class unchecked.
    pub classes: [Option<&'static [&'static str]>; 4],
    /// Partial conjunctions that must embed into distinct class I queries.
    pub embedded: &'static [&'static str],
}

const ABC_CLASS_I: &[&str] = &[
    "_property(E2, borough, of, new_york_city), _property(E2, headquarter, _by, S2), _property(E2, headquarter, in, X2), \
     _similar(abc, S2), borough(X2, _), event(E2, headquarter, _, O2), organization(abc)",
    "_property(E2, borough, of, new_york_city), _property(E2, headquarter, in, X2), _relation(S2, E2, _clause), \
     _similar(abc, S2), event(E2, headquarter, _, _), organization(abc), borough(X2, _)",
    "_property(E2, borough, of, new_york_city), _property(E2, headquarter, in, X2), _similar(abc, S2), \
     event(E2, headquarter, S2, O2), organization(abc), borough(X2, _)",
];

const ABC_CLASS_II: &[&str] = &[
    "_property(E2, borough, of, new_york_city), _property(E2, headquarter, _by, S2), _property(E2, headquarter, in, X2), \
     _similar(abc, S2), event(E2, headquarter, _, O2), borough(X2, _)",
    "_property(E2, borough, of, new_york_city), _property(E2, headquarter, in, X2), _relation(S2, E2, _clause), \
     _similar(abc, S2), event(E2, headquarter, _, _), borough(X2, _)",
    "_property(E2, borough, of, new_york_city), _property(E2, headquarter, in, X2), _similar(abc, S2), \
     event(E2, headquarter, S2, O2), borough(X2, _)",
];

const TESLA_CLASS_I: &[&str] = &[
    "event(E2, bear, S2, O2), _similar(nikola_tesla, S2), _property(E2, bear, on, X2), time(X2)",
    "event(E2, bear, _, O2), _property(E2, bear, _by, S2), _similar(nikola_tesla, S2), _property(E2, bear, on, X2), time(X2)",
    "event(E2, bear, _, _), _relation(S2, E2, _clause), _similar(nikola_tesla, S2), _property(E2, bear, on, X2), time(X2)",
    "_start_date(S2, X2), _similar(nikola_tesla, S2), time(X2)",
];

pub const QUERY_CASES: &[QueryCase] = &[
    QueryCase {
        fixture: "walt_disney",
        classes: [None; 4],
        embedded: &[
            "event(E1, own, X1, O1), _similar(walt_disney, O1)",
            "event(E1, own, _, O1), _property(E1, own, _by, X1), _similar(walt_disney, O1)",
            "event(E1, own, _, _), _relation(X1, E1, _clause), _similar(walt_disney, O1)",
        ],
    },
    QueryCase { fixture: "abc_street", classes: [None; 4], embedded: &["_property(E2, locate, on, X2)"] },
    QueryCase { fixture: "tesla_born", classes: [Some(TESLA_CLASS_I), None, None, Some(&["time(X2)"])], embedded: &[] },
    QueryCase {
        fixture: "abc_borough",
        classes: [
            Some(ABC_CLASS_I),
            Some(ABC_CLASS_II),
            Some(&["_property(E2, headquarter, in, X2), borough(X2, _)"]),
            Some(&["borough(X2, _)"]),
        ],
        embedded: &[],
    },
];

fn bodies(qs: &[Query]) -> Vec<Vec<caspr::ir::Literal>> {
    qs.iter().map(|q| q.subgoals.clone()).collect()
}

/// Each class is a subset of the next once classes are compared as sets of
/// literal sets: every query of class c+1 is contained in some query of
/// class c.
pub fn check_subset_chain(ladder: &caspr::query::QueryLadder) -> Result<(), String> {
    for w in Confidence::ALL.windows(2) {
        let (hi, lo) = (ladder.class(w[0]), ladder.class(w[1]));
        for q in lo {
            if !hi.iter().any(|h| q.subgoals.iter().all(|l| h.subgoals.contains(l))) {
                return Err(format!("{} query {q} is not contained in any {} query", w[1].tag(), w[0].tag()));
            }
        }
    }
    Ok(())
}

pub fn check_query_case(case: &QueryCase) -> Result<(), String> {
    let doc = load(&format!("questions/{}.json", case.fixture));
    let (_, ladder) = compile_question(&doc, &ExpansionTable::default()).map_err(|e| format!("{}: {e}", case.fixture))?;
    for (c, expected) in Confidence::ALL.into_iter().zip(case.classes) {
        let Some(expected) = expected else { continue };
        let want: Vec<_> = expected.iter().map(|t| conjunction(t)).collect();
        if !same_queries(&want, &bodies(ladder.class(c))) {
            let got: Vec<String> = ladder.class(c).iter().map(ToString::to_string).collect();
            return Err(format!("{}: {} differs: {got:?}", case.fixture, c.tag()));
        }
    }
    let class_one = bodies(ladder.class(Confidence::Certain));
    let mut taken = vec![false; class_one.len()];
    for part in case.embedded {
        let part = conjunction(part);
        let Some(j) = (0..class_one.len()).find(|&j| !taken[j] && embeds(&part, &class_one[j])) else {
            return Err(format!("{}: no class I query contains {part:?}", case.fixture));
        };
        taken[j] = true;
    }
    check_subset_chain(&ladder).map_err(|e| format!("{}: {e}", case.fixture))?;
    let rebuilt = build_relaxation_ladder(ladder.class(Confidence::Certain).to_vec()).map_err(|e| e.to_string())?;
    if rebuilt != ladder {
        return Err(format!("{}: ladder is not a function of class I", case.fixture));
    }
    Ok(())
}

pub fn check_golden_queries() -> Result<(), String> {
    QUERY_CASES.iter().try_for_each(check_query_case)
}
