//! Hand-built stratified programs checked against the brute-force oracle.

use std::collections::BTreeSet;

use caspr::ir::{parse_program, Atom};
use caspr::solver::{brute_force_models, ground_program, Solver, DEFAULT_ATOM_BUDGET};

pub const PROGRAMS: &[(&str, &str)] = &[
    ("default with exception", "bird(tweety). bird(sam). penguin(sam). ab(X) :- penguin(X). fly(X) :- bird(X), not ab(X)."),
    (
        "similar closure",
        "_abbreviation(nyc, new_york_city). _is(ny, nyc).
         _similar(X, Y) :- _abbreviation(X, Y). _similar(X, Y) :- _abbreviation(Y, X). _similar(X, Y) :- _is(X, Y).
         _similar(X, Y) :- _similar(X, Z), _similar(Z, Y).",
    ),
    ("chain closure", "edge(a, b). edge(b, c). edge(c, d). path(X, Y) :- edge(X, Y). path(X, Y) :- edge(X, Z), path(Z, Y)."),
    (
        "unreachable pairs",
        "node(a). node(b). node(c). edge(a, b). edge(b, a).
         reach(X, Y) :- edge(X, Y). reach(X, Y) :- reach(X, Z), edge(Z, Y).
         apart(X, Y) :- node(X), node(Y), not reach(X, Y).",
    ),
    (
        "hypernym chain",
        "lion(simba). lion(X, noun_animal) :- lion(X), not -lion(X, noun_animal).
         feline(X, noun_animal) :- lion(X, noun_animal), not ab_feline(X).
         carnivore(X, noun_animal) :- feline(X, noun_animal), not ab_carnivore(X).
         mammal(X, noun_animal) :- carnivore(X, noun_animal), not ab_mammal(X).",
    ),
    (
        "hypernym chain with abnormality",
        "lion(simba). lion(nala). ab_carnivore(nala). lion(X, noun_animal) :- lion(X), not -lion(X, noun_animal).
         feline(X, noun_animal) :- lion(X, noun_animal), not ab_feline(X).
         carnivore(X, noun_animal) :- feline(X, noun_animal), not ab_carnivore(X).
         mammal(X, noun_animal) :- carnivore(X, noun_animal), not ab_mammal(X).",
    ),
    (
        "sense from characteristics",
        "tree(t1). characteristics(diagram, t1).
         tree(X, plant) :- tree(X), characteristics(plant, X), not -tree(X, plant).
         tree(X, diagram) :- tree(X), characteristics(diagram, X), not -tree(X, diagram).
         tree(X, plant) :- tree(X), not -tree(X, plant), not tree(X, diagram), not tree(X, person).
         tree(X, diagram) :- tree(X), not -tree(X, diagram), -tree(X, plant), not tree(X, person).
         tree(X, person) :- tree(X), not -tree(X, person), -tree(X, plant), -tree(X, diagram).",
    ),
    (
        "team represents organization",
        "_possess(nfl, broncos). organization(nfl). team(broncos). mentioned(nfl). mentioned(broncos). mentioned(e1).
         event(E, represent, X, Y) :- _possess(Y, X), organization(Y), team(X), mentioned(E), not ab_event(E, represent, X, Y).
         blocked(e1). ab_event(E, represent, X, Y) :- blocked(E), _possess(Y, X).",
    ),
    (
        "even and odd",
        "num(0). num(1). num(2). num(3). num(4). succ(0, 1). succ(1, 2). succ(2, 3). succ(3, 4). even(0).
         odd(X) :- succ(Y, X), even(Y). even(X) :- succ(Y, X), odd(Y). noteven(X) :- num(X), not even(X).",
    ),
    ("classical negation default", "bird(tweety). bird(pingu). penguin(pingu). -fly(X) :- penguin(X). fly(X) :- bird(X), not -fly(X)."),
    ("closed world", "p(a). p(b). q(a). r(X) :- p(X), not q(X). s(X) :- p(X), not r(X)."),
    ("propositional strata", "a :- not b. b :- not c. c :- not d. e :- a, c."),
    (
        "start date through similarity",
        "_start_date(tesla, 1856). _is(tesla, nikola_tesla). time(1856).
         _similar(X, Y) :- _is(X, Y). _similar(X, Y) :- _is(Y, X).
         born(X) :- _start_date(S, X), _similar(nikola_tesla, S), time(X).",
    ),
    (
        "same generation",
        "par(a, b). par(a, c). par(b, d). par(c, e). node(a). node(b). node(c).
         sg(X, X) :- node(X). sg(X, Y) :- par(P, X), par(Q, Y), sg(P, Q).",
    ),
    (
        "nested abnormality",
        "penguin(p1). penguin(p2). flying_penguin(p2). bird(b1). bird(X) :- penguin(X).
         ab(X) :- penguin(X), not flying_penguin(X). flies(X) :- bird(X), not ab(X).",
    ),
    ("constant-level strata", "q(a). p(a) :- not q(a). p(b) :- not p(a). r :- p(b)."),
    ("no supporting facts", "p(X) :- q(X). r :- not p(a). s :- r, not t."),
    ("arity overloading", "lion(a). lion(b). lion(X, s) :- lion(X), not -lion(X, s). -lion(b, s). cat(X) :- lion(X, s)."),
    (
        "roots of a forest",
        "parent(a, b). parent(b, c). parent(d, e). person(a). person(b). person(c). person(d). person(e).
         has_parent(X) :- parent(_, X). root(X) :- person(X), not has_parent(X).
         ancestor(X, Y) :- parent(X, Y). ancestor(X, Y) :- parent(X, Z), ancestor(Z, Y).",
    ),
    ("negated facts guard defaults", "-p(a). q(a). q(b). p(X) :- q(X), not -p(X). r(X) :- q(X), not p(X)."),
    (
        "owner through abbreviation",
        "event(1, own, walt_disney_company, abc). _abbreviation(abc, american_broadcasting_company). company(walt_disney_company).
         _similar(X, Y) :- _abbreviation(X, Y). _similar(X, Y) :- _abbreviation(Y, X).
         owner(X) :- event(E, own, X, O), _similar(american_broadcasting_company, O), company(X).",
    ),
    ("integer arguments", "age(tom, 30). age(ann, 12). adult(X) :- age(X, 30). minor(X) :- age(X, _), not adult(X)."),
    (
        "mutual recursion with negation above",
        "e(a, b). e(b, a). e(c, c). p(X) :- e(X, Y), q(Y). q(X) :- e(X, Y), p(Y). q(a).
         lonely(X) :- e(X, X), not p(X).",
    ),
];

/// Ground atoms whose truth the solver and the oracle must agree on: every
/// atom of the relevant grounding plus a few that cannot hold.
fn query_atoms(text: &str) -> Vec<Atom> {
    let program = parse_program(text).unwrap();
    let mut atoms = BTreeSet::new();
    for r in ground_program(&program) {
        atoms.extend(r.head.into_iter().chain(r.pos).chain(r.neg).filter(Atom::is_ground));
    }
    atoms.insert(Atom::new("absent", vec![]));
    atoms.into_iter().collect()
}

/// Number of distinct ground atoms that are not given as facts.
pub fn open_atoms(text: &str) -> usize {
    let program = parse_program(text).unwrap();
    let facts: BTreeSet<&Atom> = program.facts().collect();
    let mut atoms = BTreeSet::new();
    for r in ground_program(&program) {
        atoms.extend(r.head.into_iter().chain(r.pos).filter(|a| !facts.contains(a)));
    }
    atoms.len()
}

pub fn check_program(name: &str, text: &str) -> Result<usize, String> {
    let program = parse_program(text).map_err(|e| format!("{name}: {e}"))?;
    let open = open_atoms(text);
    if open > DEFAULT_ATOM_BUDGET {
        return Err(format!("{name}: {open} open atoms exceed the enumeration budget"));
    }
    let models = brute_force_models(&program, DEFAULT_ATOM_BUDGET).map_err(|e| format!("{name}: {e}"))?;
    let [model] = models.as_slice() else {
        return Err(format!("{name}: {} stable models", models.len()));
    };
    let solver = Solver::new(&program).map_err(|e| format!("{name}: {e}"))?;
    let atoms = query_atoms(text);
    for a in &atoms {
        let got = solver.holds(a).map_err(|e| format!("{name}: {a}: {e}"))?;
        if got != model.contains(a) {
            return Err(format!("{name}: solver says {a} is {got}, oracle disagrees"));
        }
    }
    Ok(atoms.len())
}

pub fn check_solver_oracle_equivalence() -> Result<usize, String> {
    PROGRAMS.iter().map(|(n, t)| check_program(n, t)).sum()
}
