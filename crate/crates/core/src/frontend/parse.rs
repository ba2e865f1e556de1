use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::constraints::{Atom, BaseVar, Interner, Store, Var};
use crate::engine::Verdict;
use crate::terms::Symbol;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// A parsed constraint file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProblemFile {
    pub name: Option<String>,
    /// From a `# expect: sat|unsat` header.
    pub expect: Option<Verdict>,
    pub atoms: Vec<Atom>,
}

impl ProblemFile {
    pub fn store(&self) -> Store {
        Store::from_atoms(self.atoms.iter().cloned())
    }
}

/// Parses a problem file with a fresh name table.
pub fn parse(src: &str) -> Result<(ProblemFile, Interner), ParseError> {
    let mut names = Interner::new();
    let p = parse_problem(src, &mut names)?;
    Ok((p, names))
}

/// Parses a problem file, interning variables into `names`.
///
/// Nested constructor arguments such as `x = f(a())` are flattened through
/// auxiliary variables `_t0`, `_t1`, ... that occur nowhere else.
pub fn parse_problem(src: &str, names: &mut Interner) -> Result<ProblemFile, ParseError> {
    let mut p = Parser::new(src, names, Mode::Input)?;
    let atoms = p.statements()?;
    let (name, expect) = header(src)?;
    Ok(ProblemFile {
        name,
        expect,
        atoms,
    })
}

/// Parses a conjunction in the printed format, where intersection
/// variables `x&y` are allowed. Used to read solved forms back.
pub fn parse_store(src: &str, names: &mut Interner) -> Result<Store, ParseError> {
    let mut p = Parser::new(src, names, Mode::Store)?;
    Ok(Store::from_atoms(p.statements()?))
}

fn header(src: &str) -> Result<(Option<String>, Option<Verdict>), ParseError> {
    let mut name = None;
    let mut expect = None;
    for (i, line) in src.lines().enumerate() {
        let Some(body) = line.trim_start().strip_prefix('#') else {
            continue;
        };
        let body = body.trim();
        if let Some(v) = body.strip_prefix("name:") {
            name = Some(v.trim().to_string());
        } else if let Some(v) = body.strip_prefix("expect:") {
            expect = Some(match v.trim() {
                "sat" => Verdict::Sat,
                "unsat" => Verdict::Unsat,
                other => {
                    return Err(ParseError {
                        line: i + 1,
                        col: 1,
                        message: format!("unknown expectation `{other}`"),
                    })
                }
            });
        }
    }
    Ok((name, expect))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Input,
    Store,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Amp,
    Eq,
    Sub,
    /// `.` or a newline outside parentheses.
    End,
}

#[derive(Debug, Clone)]
struct Lexeme {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Lexeme>, ParseError> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    for (li, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let at = |tok| Lexeme {
                tok,
                line: li + 1,
                col: i + 1,
            };
            match c {
                '#' => break,
                c if c.is_whitespace() => {}
                '(' => {
                    depth += 1;
                    out.push(at(Tok::LParen));
                }
                ')' => {
                    depth = depth.saturating_sub(1);
                    out.push(at(Tok::RParen));
                }
                ',' => out.push(at(Tok::Comma)),
                '&' => out.push(at(Tok::Amp)),
                '=' => out.push(at(Tok::Eq)),
                '.' => out.push(at(Tok::End)),
                '⊑' => out.push(at(Tok::Sub)),
                '<' if chars.get(i + 1) == Some(&'=') => {
                    out.push(at(Tok::Sub));
                    i += 1;
                }
                c if crate::terms::is_ident_start(c) => {
                    let start = i;
                    while i + 1 < chars.len() && crate::terms::is_ident_char(chars[i + 1]) {
                        i += 1;
                    }
                    let word: String = chars[start..=i].iter().collect();
                    out.push(Lexeme {
                        tok: Tok::Ident(word),
                        line: li + 1,
                        col: start + 1,
                    });
                }
                other => {
                    return Err(ParseError {
                        line: li + 1,
                        col: i + 1,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
            i += 1;
        }
        if depth == 0 {
            out.push(Lexeme {
                tok: Tok::End,
                line: li + 1,
                col: chars.len() + 1,
            });
        }
    }
    Ok(out)
}

/// A right-hand side or argument before flattening.
enum Term {
    Var(Var),
    App(Symbol, Vec<Term>),
}

struct Parser<'a> {
    toks: Vec<Lexeme>,
    pos: usize,
    names: &'a mut Interner,
    mode: Mode,
    arities: HashMap<String, usize>,
    taken: BTreeSet<String>,
    aux: usize,
    eof: (usize, usize),
}

impl<'a> Parser<'a> {
    fn new(src: &str, names: &'a mut Interner, mode: Mode) -> Result<Self, ParseError> {
        let toks = lex(src)?;
        let taken = toks
            .iter()
            .filter_map(|l| match &l.tok {
                Tok::Ident(s) => Some(s.clone()),
                _ => None,
            })
            .collect();
        let last_line = src.lines().count().max(1);
        Ok(Parser {
            toks,
            pos: 0,
            names,
            mode,
            arities: HashMap::new(),
            taken,
            aux: 0,
            eof: (last_line, 1),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self
            .toks
            .get(self.pos)
            .map_or(self.eof, |l| (l.line, l.col));
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.error("expected an identifier")),
        }
    }

    fn statements(&mut self) -> Result<Vec<Atom>, ParseError> {
        let mut atoms = Vec::new();
        while self.pos < self.toks.len() {
            if self.peek() == Some(&Tok::End) {
                self.pos += 1;
                continue;
            }
            self.statement(&mut atoms)?;
            match self.peek() {
                None | Some(Tok::End) => {}
                _ => return Err(self.error("expected end of statement")),
            }
        }
        Ok(atoms)
    }

    fn statement(&mut self, atoms: &mut Vec<Atom>) -> Result<(), ParseError> {
        let lhs = match self.term()? {
            Term::Var(v) => v,
            Term::App(..) => return Err(self.error("left-hand side must be a variable")),
        };
        let sub = match self.peek() {
            Some(Tok::Eq) => false,
            Some(Tok::Sub) => true,
            _ => return Err(self.error("expected `=` or `<=`")),
        };
        self.pos += 1;
        let rhs = self.term()?;
        let mut aux = Vec::new();
        let atom = match rhs {
            Term::Var(y) if sub => Atom::Sub(lhs, y),
            Term::Var(y) => Atom::Eq(lhs, y).canonical(),
            Term::App(f, args) => {
                let args = args
                    .into_iter()
                    .map(|a| self.flatten(a, &mut aux))
                    .collect();
                if sub {
                    Atom::SubApp(lhs, f, args)
                } else {
                    Atom::EqApp(lhs, f, args)
                }
            }
        };
        atoms.push(atom);
        atoms.extend(aux);
        Ok(())
    }

    /// Replaces a nested application by a fresh variable bound to it.
    fn flatten(&mut self, t: Term, aux: &mut Vec<Atom>) -> Var {
        match t {
            Term::Var(v) => v,
            Term::App(f, args) => {
                let v = Var::base(self.aux_var());
                let args = args.into_iter().map(|a| self.flatten(a, aux)).collect();
                aux.push(Atom::EqApp(v.clone(), f, args));
                v
            }
        }
    }

    fn aux_var(&mut self) -> BaseVar {
        loop {
            let name = format!("_t{}", self.aux);
            self.aux += 1;
            if !self.taken.contains(&name) && self.names.get(&name).is_none() {
                self.taken.insert(name.clone());
                return self.names.intern(&name);
            }
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let start = self.pos;
        let head = self.ident()?;
        if self.peek() == Some(&Tok::LParen) {
            self.pos += 1;
            let mut args = Vec::new();
            if self.peek() != Some(&Tok::RParen) {
                loop {
                    args.push(self.term()?);
                    if self.peek() == Some(&Tok::Comma) {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
            }
            self.expect(Tok::RParen, "`)` or `,`")?;
            if self.mode == Mode::Input {
                match self.arities.get(&head) {
                    Some(&n) if n != args.len() => {
                        self.pos = start;
                        return Err(self.error(format!(
                            "symbol `{head}` used with {} arguments, earlier with {n}",
                            args.len()
                        )));
                    }
                    _ => {
                        self.arities.insert(head.clone(), args.len());
                    }
                }
            }
            return Ok(Term::App(Symbol::new(&head, args.len()), args));
        }
        let mut comps = vec![self.names.intern(&head)];
        while self.peek() == Some(&Tok::Amp) {
            if self.mode == Mode::Input {
                return Err(self.error("intersection variables are not allowed in input"));
            }
            self.pos += 1;
            let c = self.ident()?;
            comps.push(self.names.intern(&c));
        }
        Ok(Term::Var(Var::from_components(comps)))
    }
}
