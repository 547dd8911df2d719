use std::fmt::{self, Write as _};

use super::{Atom, Program, Provenance, Rule, Term};

/// True when a constant can be written without quotes.
fn is_bare(s: &str) -> bool {
    let rest = s.trim_start_matches('_');
    s != "not"
        && rest.chars().next().is_some_and(|c| c.is_ascii_lowercase())
        && s.chars().all(|c| c == '_' || c.is_ascii_alphanumeric())
}

pub(super) fn write_term(f: &mut impl fmt::Write, t: &Term) -> fmt::Result {
    match t {
        // A numeric `_` segment forces quotes, as in 'february_7_2016'.
        Term::Const(s) if is_bare(s) && !s.split('_').any(|p| p.starts_with(|c: char| c.is_ascii_digit())) => {
            f.write_str(s)
        }
        Term::Const(s) => {
            f.write_char('\'')?;
            for c in s.chars() {
                if c == '\'' || c == '\\' {
                    f.write_char('\\')?;
                }
                f.write_char(c)?;
            }
            f.write_char('\'')
        }
        Term::Int(n) => write!(f, "{n}"),
        Term::Var(v) => f.write_str(v),
    }
}

pub(super) fn write_atom(f: &mut impl fmt::Write, a: &Atom) -> fmt::Result {
    if a.negated {
        f.write_char('-')?;
    }
    f.write_str(&a.predicate)?;
    if !a.args.is_empty() {
        f.write_char('(')?;
        for (i, t) in a.args.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write_term(f, t)?;
        }
        f.write_char(')')?;
    }
    Ok(())
}

pub(crate) fn atom_to_string(a: &Atom) -> String {
    let mut s = String::new();
    let _ = write_atom(&mut s, a);
    s
}

pub(crate) fn rule_to_string(r: &Rule) -> String {
    let mut s = String::new();
    if let Some(h) = &r.head {
        let _ = write_atom(&mut s, h);
    }
    if !r.body.is_empty() {
        s.push_str(if r.head.is_some() { " :- " } else { ":- " });
        for (i, l) in r.body.iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            if l.naf {
                s.push_str("not ");
            }
            let _ = write_atom(&mut s, &l.atom);
        }
    }
    s.push('.');
    s
}

/// Canonical program text: one rule per line. A `% @source` line is
/// written whenever the provenance changes from the previous rule
/// (the initial provenance is `plumbing`).
pub fn print_program(p: &Program) -> String {
    let mut out = String::new();
    let mut current = Provenance::Plumbing;
    for (rule, prov) in p.iter() {
        if prov != current {
            let _ = writeln!(out, "% @source {prov}");
            current = prov;
        }
        out.push_str(&rule_to_string(rule));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{parse_program, Literal};

    #[test]
    fn event_fact() {
        let mut p = Program::new();
        let args = ["denver_broncos", "carolina_panthers"].map(Term::constant);
        let atom = Atom::new(
            "event",
            vec![Term::Int(1), Term::constant("defeat"), args[0].clone(), args[1].clone()],
        );
        p.push(Rule::fact(atom), Provenance::Plumbing).unwrap();
        assert_eq!(print_program(&p), "event(1, defeat, denver_broncos, carolina_panthers).\n");
    }

    #[test]
    fn empty_program() {
        assert_eq!(print_program(&Program::new()), "");
    }

    #[test]
    fn headless_constraint() {
        let r = Rule::constraint(vec![Literal::pos(Atom::new("p", vec![Term::constant("a")]))]);
        assert_eq!(rule_to_string(&r), ":- p(a).");
    }

    #[test]
    fn quoting() {
        let mut s = String::new();
        for t in ["10_november_1483", "581,309", "new york", "february_7_2016", "_by", "Abc", "it's"] {
            write_term(&mut s, &Term::constant(t)).unwrap();
            s.push(' ');
        }
        assert_eq!(s, "'10_november_1483' '581,309' 'new york' 'february_7_2016' _by 'Abc' 'it\\'s' ");
    }

    #[test]
    fn provenance_round_trips() {
        let text = "p(a).\n% @source sentence:2\nq(a).\n% @source ontology\nr(X) :- q(X), not -p(X).\n";
        let p = parse_program(text).unwrap();
        assert_eq!(print_program(&p), text);
    }
}
