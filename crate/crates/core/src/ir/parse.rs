use super::{Atom, Literal, Program, ProgramError, Provenance, Rule, Term};

/// Syntax or safety error, located at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Var(String),
    Int(i64),
    Quoted(String),
    LParen,
    RParen,
    Comma,
    Dot,
    If,
    Minus,
    Not,
    /// `% @source <provenance>` directive.
    Source(Provenance),
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { src: text.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn err(&self, line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line, column, message: message.into() }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        if b == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(b)
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> String {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.bump();
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
        let mut out = Vec::new();
        while let Some(b) = self.peek() {
            let (line, col) = (self.line, self.col);
            match b {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    self.bump();
                }
                b'%' => {
                    let comment = self.take_while(|c| c != b'\n');
                    if let Some(rest) = comment.trim_start_matches('%').trim().strip_prefix("@source") {
                        let prov = rest
                            .trim()
                            .parse::<Provenance>()
                            .map_err(|m| self.err(line, col, m))?;
                        out.push((Tok::Source(prov), line, col));
                    }
                }
                b'(' => {
                    self.bump();
                    out.push((Tok::LParen, line, col));
                }
                b')' => {
                    self.bump();
                    out.push((Tok::RParen, line, col));
                }
                b',' => {
                    self.bump();
                    out.push((Tok::Comma, line, col));
                }
                b'.' => {
                    self.bump();
                    out.push((Tok::Dot, line, col));
                }
                b'-' => {
                    self.bump();
                    out.push((Tok::Minus, line, col));
                }
                b':' => {
                    self.bump();
                    if self.bump() != Some(b'-') {
                        return Err(self.err(line, col, "expected `:-`"));
                    }
                    out.push((Tok::If, line, col));
                }
                b'\'' | b'"' => {
                    let quote = b;
                    self.bump();
                    let mut s = Vec::new();
                    loop {
                        match self.bump() {
                            None => return Err(self.err(line, col, "unterminated quoted constant")),
                            Some(b'\\') => match self.bump() {
                                Some(c) => s.push(c),
                                None => return Err(self.err(line, col, "unterminated quoted constant")),
                            },
                            Some(c) if c == quote => break,
                            Some(c) => s.push(c),
                        }
                    }
                    out.push((Tok::Quoted(String::from_utf8_lossy(&s).into_owned()), line, col));
                }
                b'0'..=b'9' => {
                    let digits = self.take_while(|c| c.is_ascii_digit());
                    let n = digits.parse().map_err(|_| self.err(line, col, "integer out of range"))?;
                    out.push((Tok::Int(n), line, col));
                }
                c if c == b'_' || c.is_ascii_alphabetic() => {
                    let word = self.take_while(|c| c == b'_' || c.is_ascii_alphanumeric());
                    let tok = if word == "not" {
                        Tok::Not
                    } else if is_variable_name(&word) {
                        Tok::Var(word)
                    } else {
                        Tok::Ident(word)
                    };
                    out.push((tok, line, col));
                }
                other => {
                    return Err(self.err(line, col, format!("unexpected character `{}`", other as char)));
                }
            }
        }
        Ok(out)
    }
}

/// `_` alone, or a name whose first letter (after leading underscores) is
/// uppercase.
pub(crate) fn is_variable_name(word: &str) -> bool {
    if word == "_" {
        return true;
    }
    word.trim_start_matches('_').chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|t| (t.1, t.2)).unwrap_or(self.end)
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = self.here();
        ParseError { line, column, message: message.into() }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.next() {
            Some(Tok::Ident(s)) | Some(Tok::Quoted(s)) => Ok(Term::Const(s)),
            Some(Tok::Var(s)) => Ok(Term::Var(s)),
            Some(Tok::Int(n)) => Ok(Term::Int(n)),
            _ => {
                self.pos -= 1;
                Err(self.err("expected a term"))
            }
        }
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let negated = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let predicate = match self.next() {
            Some(Tok::Ident(s)) => s,
            _ => {
                self.pos -= 1;
                return Err(self.err("expected a predicate name"));
            }
        };
        let mut args = Vec::new();
        if self.peek() == Some(&Tok::LParen) {
            self.pos += 1;
            loop {
                args.push(self.term()?);
                match self.next() {
                    Some(Tok::Comma) => continue,
                    Some(Tok::RParen) => break,
                    _ => {
                        self.pos -= 1;
                        return Err(self.err("expected `,` or `)`"));
                    }
                }
            }
        }
        Ok(Atom { predicate, args, negated })
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        let naf = if self.peek() == Some(&Tok::Not) {
            self.pos += 1;
            true
        } else {
            false
        };
        Ok(Literal { atom: self.atom()?, naf })
    }

    fn rule(&mut self) -> Result<Rule, ParseError> {
        let head = if self.peek() == Some(&Tok::If) {
            None
        } else {
            if self.peek() == Some(&Tok::Not) {
                return Err(self.err(ProgramError::NafInHead.to_string()));
            }
            Some(self.atom()?)
        };
        let mut body = Vec::new();
        if self.peek() == Some(&Tok::If) {
            self.pos += 1;
            loop {
                body.push(self.literal()?);
                match self.peek() {
                    Some(Tok::Comma) => self.pos += 1,
                    _ => break,
                }
            }
        } else if head.is_none() {
            return Err(self.err("empty rule"));
        }
        self.expect(Tok::Dot, "`.` at end of rule")?;
        Ok(Rule { head, body })
    }
}

/// A parsed rule with its provenance and 1-based (line, column).
pub type LocatedRule = (Rule, Provenance, (usize, usize));

/// Parses program text into located rules without checking safety.
pub fn parse_rules(text: &str) -> Result<Vec<LocatedRule>, ParseError> {
    let lexer = Lexer::new(text);
    let toks = lexer.tokens()?;
    let end = text.lines().count().max(1);
    let last_col = text.lines().last().map(|l| l.len() + 1).unwrap_or(1);
    let mut parser = Parser { toks, pos: 0, end: (end, last_col) };
    let mut prov = Provenance::Plumbing;
    let mut out = Vec::new();
    while let Some(tok) = parser.peek() {
        if let Tok::Source(p) = tok {
            prov = *p;
            parser.pos += 1;
            continue;
        }
        let start = parser.here();
        let rule = parser.rule()?;
        out.push((rule, prov, start));
    }
    Ok(out)
}

/// Parses program text. `% @source <tag>` comment directives set the
/// provenance of the rules that follow; everything else after `%` is a
/// comment.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let mut program = Program::new();
    for (rule, prov, (line, column)) in parse_rules(text)? {
        program
            .push(rule, prov)
            .map_err(|e| ParseError { line, column, message: e.to_string() })?;
    }
    Ok(program)
}
