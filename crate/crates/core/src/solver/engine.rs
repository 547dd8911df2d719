//! Tabled top-down evaluation over interned constants.
//!
//! Every call pattern (a variant key) owns a table. Tables that reach an
//! ancestor still under evaluation stay incomplete until the ancestor that
//! leads their recursive component reaches a fixpoint.

use std::collections::{HashMap, HashSet};

use indexmap::IndexSet;

use super::SolveError;
use crate::ir::{Atom, Literal, Program, Term};

pub(crate) type Sym = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Pat {
    Const(Sym),
    Var(usize),
}

#[derive(Clone, Debug)]
struct CAtom {
    pred: u32,
    args: Vec<Pat>,
}

#[derive(Clone, Debug)]
struct CLit {
    atom: CAtom,
    naf: bool,
}

#[derive(Clone, Debug)]
struct Clause {
    head: CAtom,
    body: Vec<CLit>,
    vars: usize,
    rule_index: usize,
}

/// A ground atom over interned symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct GroundAtom {
    pub pred: u32,
    pub args: Box<[Sym]>,
}

/// One body step of a derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Step {
    Proved(GroundAtom),
    Failed(GroundAtom),
}

/// The first derivation found for a ground atom.
#[derive(Clone, Debug)]
pub(crate) struct Derivation {
    pub rule_index: usize,
    pub body: Vec<Step>,
}

/// Predicate name, arity and classical-negation flag.
type PredKey = (String, usize, bool);

/// A program compiled for evaluation. Immutable and shareable.
#[derive(Debug)]
pub(crate) struct Compiled {
    symbols: IndexSet<Term>,
    preds: IndexSet<PredKey>,
    clauses: Vec<Clause>,
    by_pred: Vec<Vec<usize>>,
}

struct VarMap {
    names: Vec<String>,
}

impl VarMap {
    fn slot(&mut self, t: &Term) -> usize {
        let Term::Var(v) = t else { unreachable!("not a variable") };
        if v != "_" {
            if let Some(i) = self.names.iter().position(|n| n == v) {
                return i;
            }
        }
        self.names.push(v.clone());
        self.names.len() - 1
    }
}

impl Compiled {
    pub fn new(p: &Program) -> Compiled {
        let mut c = Compiled { symbols: IndexSet::new(), preds: IndexSet::new(), clauses: Vec::new(), by_pred: Vec::new() };
        for (i, rule) in p.rules().iter().enumerate() {
            // Constraints do not define anything a query can call.
            let Some(head) = &rule.head else { continue };
            let mut vars = VarMap { names: Vec::new() };
            let head = c.atom(head, &mut vars);
            let body = rule.body.iter().map(|l| CLit { atom: c.atom(&l.atom, &mut vars), naf: l.naf }).collect();
            let pred = head.pred as usize;
            c.clauses.push(Clause { head, body, vars: vars.names.len(), rule_index: i });
            c.by_pred[pred].push(c.clauses.len() - 1);
        }
        c
    }

    fn pred(&mut self, a: &Atom) -> u32 {
        let (i, fresh) = self.preds.insert_full((a.predicate.clone(), a.args.len(), a.negated));
        if fresh {
            self.by_pred.push(Vec::new());
        }
        i as u32
    }

    fn atom(&mut self, a: &Atom, vars: &mut VarMap) -> CAtom {
        let pred = self.pred(a);
        let args = a
            .args
            .iter()
            .map(|t| if t.is_var() { Pat::Var(vars.slot(t)) } else { Pat::Const(self.symbols.insert_full(t.clone()).0 as Sym) })
            .collect();
        CAtom { pred, args }
    }

    pub fn atom_of(&self, g: &GroundAtom, extra: &[Term]) -> Atom {
        let (name, _, negated) = &self.preds[g.pred as usize];
        let args = g.args.iter().map(|&s| self.term(s, extra)).collect();
        Atom { predicate: name.clone(), args, negated: *negated }
    }

    fn term(&self, s: Sym, extra: &[Term]) -> Term {
        match self.symbols.get_index(s as usize) {
            Some(t) => t.clone(),
            None => extra[s as usize - self.symbols.len()].clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum KeyArg {
    Bound(Sym),
    /// Free position, numbered by first occurrence within the call.
    Free(u8),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct CallKey {
    pred: u32,
    args: Box<[KeyArg]>,
}

impl CallKey {
    fn admits(&self, tuple: &[Sym]) -> bool {
        let mut seen: Vec<Sym> = Vec::new();
        self.args.iter().zip(tuple).all(|(k, &s)| match *k {
            KeyArg::Bound(b) => b == s,
            KeyArg::Free(n) => match seen.get(n as usize) {
                Some(&prev) => prev == s,
                None => {
                    seen.push(s);
                    true
                }
            },
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum State {
    Active(usize),
    Incomplete,
    Complete,
}

#[derive(Debug)]
struct Table {
    answers: Vec<Box<[Sym]>>,
    seen: HashSet<Box<[Sym]>>,
    state: State,
}

pub(crate) enum Flow {
    Continue,
    Stop,
}

/// Per-solve evaluation state.
pub(crate) struct Engine<'p> {
    cp: &'p Compiled,
    /// Constants that occur in the query but not in the program.
    pub extra: Vec<Term>,
    tables: HashMap<CallKey, Table>,
    depth: usize,
    low: usize,
    pending: Vec<CallKey>,
    answers_added: u64,
    pub derivations: HashMap<GroundAtom, Derivation>,
}

/// A query body compiled against one engine.
pub(crate) struct CompiledQuery {
    body: Vec<CLit>,
    pub var_names: Vec<String>,
}

type Env = Vec<Option<Sym>>;

impl<'p> Engine<'p> {
    pub fn new(cp: &'p Compiled) -> Self {
        Engine {
            cp,
            extra: Vec::new(),
            tables: HashMap::new(),
            depth: 0,
            low: usize::MAX,
            pending: Vec::new(),
            answers_added: 0,
            derivations: HashMap::new(),
        }
    }

    fn sym(&mut self, t: &Term) -> Sym {
        if let Some(i) = self.cp.symbols.get_index_of(t) {
            return i as Sym;
        }
        let base = self.cp.symbols.len();
        match self.extra.iter().position(|e| e == t) {
            Some(i) => (base + i) as Sym,
            None => {
                self.extra.push(t.clone());
                (base + self.extra.len() - 1) as Sym
            }
        }
    }

    pub fn term(&self, s: Sym) -> Term {
        self.cp.term(s, &self.extra)
    }

    pub fn atom(&self, g: &GroundAtom) -> Atom {
        self.cp.atom_of(g, &self.extra)
    }

    /// Unknown predicates get an id past the program's, with no clauses.
    pub fn compile_query(&mut self, lits: &[Literal], unknown: &mut Vec<PredKey>) -> CompiledQuery {
        let mut vars = VarMap { names: Vec::new() };
        let body = lits
            .iter()
            .map(|l| {
                let a = &l.atom;
                let key = (a.predicate.clone(), a.args.len(), a.negated);
                let pred = match self.cp.preds.get_index_of(&key) {
                    Some(i) => i as u32,
                    None => {
                        let i = unknown.iter().position(|k| *k == key).unwrap_or_else(|| {
                            unknown.push(key.clone());
                            unknown.len() - 1
                        });
                        (self.cp.preds.len() + i) as u32
                    }
                };
                let args = a.args.iter().map(|t| if t.is_var() { Pat::Var(vars.slot(t)) } else { Pat::Const(self.sym(t)) }).collect();
                CLit { atom: CAtom { pred, args }, naf: l.naf }
            })
            .collect();
        CompiledQuery { body, var_names: vars.names }
    }

    /// Enumerates the query's solutions in order until `k` stops.
    pub fn run_query(
        &mut self,
        q: &CompiledQuery,
        k: &mut dyn FnMut(&Engine<'p>, &Env, &[Option<Step>]) -> Flow,
    ) -> Result<(), SolveError> {
        let mut env = vec![None; q.var_names.len()];
        let mut done = vec![false; q.body.len()];
        let mut proof = vec![None; q.body.len()];
        self.solve_body(&q.body, &mut done, &mut env, &mut proof, &mut |e, env, proof| Ok(k(e, env, proof)))?;
        Ok(())
    }

    fn key(&self, a: &CAtom, env: &Env) -> CallKey {
        let mut free: Vec<usize> = Vec::new();
        let args = a
            .args
            .iter()
            .map(|p| match *p {
                Pat::Const(c) => KeyArg::Bound(c),
                Pat::Var(v) => match env[v] {
                    Some(s) => KeyArg::Bound(s),
                    None => {
                        let n = free.iter().position(|&f| f == v).unwrap_or_else(|| {
                            free.push(v);
                            free.len() - 1
                        });
                        KeyArg::Free(n as u8)
                    }
                },
            })
            .collect();
        CallKey { pred: a.pred, args }
    }

    fn is_ground(a: &CAtom, env: &Env) -> bool {
        a.args.iter().all(|p| match *p {
            Pat::Const(_) => true,
            Pat::Var(v) => env[v].is_some(),
        })
    }

    fn ground(a: &CAtom, env: &Env) -> GroundAtom {
        let args = a
            .args
            .iter()
            .map(|p| match *p {
                Pat::Const(c) => c,
                Pat::Var(v) => env[v].expect("bound variable"),
            })
            .collect();
        GroundAtom { pred: a.pred, args }
    }

    /// Binds `a`'s variables to `tuple`; records new bindings on `trail`.
    fn unify(a: &CAtom, tuple: &[Sym], env: &mut Env, trail: &mut Vec<usize>) -> bool {
        for (p, &s) in a.args.iter().zip(tuple) {
            match *p {
                Pat::Const(c) if c != s => return false,
                Pat::Const(_) => {}
                Pat::Var(v) => match env[v] {
                    Some(b) if b != s => return false,
                    Some(_) => {}
                    None => {
                        env[v] = Some(s);
                        trail.push(v);
                    }
                },
            }
        }
        true
    }

    fn solve_body(
        &mut self,
        body: &[CLit],
        done: &mut Vec<bool>,
        env: &mut Env,
        proof: &mut Vec<Option<Step>>,
        k: &mut dyn FnMut(&mut Engine<'p>, &Env, &[Option<Step>]) -> Result<Flow, SolveError>,
    ) -> Result<Flow, SolveError> {
        // Leftmost positive literal, or leftmost `not` literal once ground.
        let pick = (0..body.len()).find(|&i| !done[i] && (!body[i].naf || Self::is_ground(&body[i].atom, env)));
        let Some(i) = pick else {
            if let Some(i) = (0..body.len()).find(|&i| !done[i]) {
                return Err(SolveError::Floundering { literal: format!("not {}", self.describe(&body[i].atom, env)) });
            }
            return k(self, env, proof);
        };
        let lit = &body[i];
        let key = self.key(&lit.atom, env);
        self.call(&key)?;
        done[i] = true;
        let mut flow = Flow::Continue;
        if lit.naf {
            let table = &self.tables[&key];
            if table.state != State::Complete {
                done[i] = false;
                return Err(SolveError::NegativeLoop { atom: self.describe(&lit.atom, env) });
            }
            if table.answers.is_empty() {
                proof[i] = Some(Step::Failed(Self::ground(&lit.atom, env)));
                flow = self.solve_body(body, done, env, proof, k)?;
                proof[i] = None;
            }
        } else {
            let n = self.tables[&key].answers.len();
            let mut trail = Vec::new();
            for j in 0..n {
                let tuple = self.tables[&key].answers[j].clone();
                if Self::unify(&lit.atom, &tuple, env, &mut trail) {
                    proof[i] = Some(Step::Proved(GroundAtom { pred: lit.atom.pred, args: tuple }));
                    flow = self.solve_body(body, done, env, proof, k)?;
                    proof[i] = None;
                }
                for v in trail.drain(..) {
                    env[v] = None;
                }
                if matches!(flow, Flow::Stop) {
                    break;
                }
            }
        }
        done[i] = false;
        Ok(flow)
    }

    fn describe(&self, a: &CAtom, env: &Env) -> String {
        let pred = self.pred_key(a.pred);
        let args: Vec<Term> = a
            .args
            .iter()
            .map(|p| match *p {
                Pat::Const(c) => self.term(c),
                Pat::Var(v) => env[v].map_or_else(|| Term::var(format!("_V{v}")), |s| self.term(s)),
            })
            .collect();
        Atom { predicate: pred.0, args, negated: pred.2 }.to_string()
    }

    fn pred_key(&self, pred: u32) -> PredKey {
        self.cp.preds.get_index(pred as usize).cloned().unwrap_or_else(|| ("?".into(), 0, false))
    }

    fn call(&mut self, key: &CallKey) -> Result<(), SolveError> {
        match self.tables.get(key).map(|t| t.state) {
            Some(State::Complete) => return Ok(()),
            Some(State::Active(d)) => {
                self.low = self.low.min(d);
                return Ok(());
            }
            _ => {}
        }
        let depth = self.depth;
        self.depth += 1;
        let mark = self.pending.len();
        self.tables
            .entry(key.clone())
            .or_insert_with(|| Table { answers: Vec::new(), seen: HashSet::new(), state: State::Complete })
            .state = State::Active(depth);
        loop {
            let saved = std::mem::replace(&mut self.low, usize::MAX);
            let before = self.answers_added;
            let result = self.eval_clauses(key);
            let mine = self.low;
            self.low = saved.min(mine);
            if let Err(e) = result {
                self.depth -= 1;
                return Err(e);
            }
            if mine < depth {
                // An ancestor leads this component; it will call again.
                self.tables.get_mut(key).expect("table").state = State::Incomplete;
                self.pending.push(key.clone());
                self.depth -= 1;
                return Ok(());
            }
            if mine == depth && self.answers_added != before {
                continue;
            }
            break;
        }
        for k in self.pending.drain(mark..) {
            if let Some(t) = self.tables.get_mut(&k) {
                t.state = State::Complete;
            }
        }
        self.tables.get_mut(key).expect("table").state = State::Complete;
        self.depth -= 1;
        Ok(())
    }

    fn eval_clauses(&mut self, key: &CallKey) -> Result<(), SolveError> {
        let cp = self.cp;
        let Some(ids) = cp.by_pred.get(key.pred as usize) else { return Ok(()) };
        for &ci in ids {
            let clause = &cp.clauses[ci];
            let mut env: Env = vec![None; clause.vars];
            let mut ok = true;
            for (p, k) in clause.head.args.iter().zip(key.args.iter()) {
                match (*p, *k) {
                    (Pat::Const(c), KeyArg::Bound(b)) => ok &= c == b,
                    (Pat::Var(v), KeyArg::Bound(b)) => match env[v] {
                        Some(prev) => ok &= prev == b,
                        None => env[v] = Some(b),
                    },
                    _ => {}
                }
            }
            if !ok {
                continue;
            }
            let mut done = vec![false; clause.body.len()];
            let mut proof = vec![None; clause.body.len()];
            self.solve_body(&clause.body, &mut done, &mut env, &mut proof, &mut |e, env, proof| {
                let head = Self::ground(&clause.head, env);
                if key.admits(&head.args) {
                    let steps = proof.iter().map(|s| s.clone().expect("proved step")).collect();
                    e.add_answer(key, head, Derivation { rule_index: clause.rule_index, body: steps });
                }
                Ok(Flow::Continue)
            })?;
        }
        Ok(())
    }

    fn add_answer(&mut self, key: &CallKey, head: GroundAtom, d: Derivation) {
        let table = self.tables.get_mut(key).expect("table");
        if table.seen.insert(head.args.clone()) {
            table.answers.push(head.args.clone());
            self.answers_added += 1;
            self.derivations.entry(head).or_insert(d);
        }
    }
}
