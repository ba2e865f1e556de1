use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::constraints::{Atom, BaseVar, Interner, Store, Var};
use crate::terms::{graph_equal, meet, parse_term, weak_subsumes, TermGraph, TermSyntaxError};

/// An assignment of rational trees to base variables. Holes of the graphs
/// are the free variables of the solution.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Witness {
    pub assignment: BTreeMap<BaseVar, TermGraph>,
}

impl Witness {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, x: BaseVar) -> Option<&TermGraph> {
        self.assignment.get(&x)
    }

    pub fn insert(&mut self, x: BaseVar, t: TermGraph) {
        self.assignment.insert(x, t);
    }

    /// The value of a possibly intersected variable: a graph whose instance
    /// set is the intersection of the components' instance sets, or `None`
    /// when that set is empty. Panics if a component is unassigned.
    pub fn eval(&self, v: &Var) -> Option<TermGraph> {
        let mut comps = v.components().iter().map(|c| {
            self.assignment
                .get(c)
                .unwrap_or_else(|| panic!("no value for variable #{}", c.0))
        });
        let first = comps.next().expect("nonempty").clone();
        comps.try_fold(first, |acc, t| meet(&acc, t))
    }

    /// One `var := term` line per variable, in id order.
    pub fn render(&self, names: &Interner) -> String {
        let mut out = String::new();
        for (&x, t) in &self.assignment {
            let _ = writeln!(out, "{} := {}", names.name(x), t);
        }
        out
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessParseError {
    #[error("line {0}: expected `var := term`")]
    Shape(usize),
    #[error("line {line}: {source}")]
    Term {
        line: usize,
        source: TermSyntaxError,
    },
}

/// Reads `var := term` lines; `#` starts a comment.
pub fn parse_witness(src: &str, names: &mut Interner) -> Result<Witness, WitnessParseError> {
    let mut w = Witness::new();
    for (i, line) in src.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (var, term) = line
            .split_once(":=")
            .ok_or(WitnessParseError::Shape(i + 1))?;
        let var = var.trim();
        if var.is_empty() || var.contains(char::is_whitespace) {
            return Err(WitnessParseError::Shape(i + 1));
        }
        let t = parse_term(term.trim()).map_err(|source| WitnessParseError::Term {
            line: i + 1,
            source,
        })?;
        w.insert(names.intern(var), t);
    }
    Ok(w)
}

/// Whether `sigma` satisfies every atom of `phi`.
///
/// Intersection variables denote the intersection of their components'
/// instance sets. `x ⊑ f(ȳ)` is checked as `Inst(σx) ⊆ Inst(f(σȳ))`.
/// Returns `false` on `⊥` and when a variable of `phi` is unassigned.
pub fn check_witness(sigma: &Witness, phi: &Store) -> bool {
    if phi.is_bottom() {
        return false;
    }
    if !phi
        .comp_vars()
        .iter()
        .all(|x| sigma.assignment.contains_key(x))
    {
        return false;
    }
    phi.atoms().all(|a| satisfies(sigma, a))
}

pub(crate) fn satisfies(sigma: &Witness, atom: &Atom) -> bool {
    match atom {
        Atom::Eq(x, y) => match (sigma.eval(x), sigma.eval(y)) {
            (Some(s), Some(t)) => graph_equal(&s, &t),
            (None, None) => true,
            _ => false,
        },
        Atom::EqApp(x, f, args) => {
            let Some(s) = sigma.eval(x) else {
                return false;
            };
            match build(sigma, f, args) {
                Some(t) => graph_equal(&s, &t),
                None => false,
            }
        }
        Atom::Sub(x, y) => match (sigma.eval(x), sigma.eval(y)) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(s), Some(t)) => weak_subsumes(&t, &s),
        },
        Atom::SubApp(x, f, args) => match (sigma.eval(x), build(sigma, f, args)) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(s), Some(u)) => weak_subsumes(&u, &s),
        },
    }
}

fn build(sigma: &Witness, f: &crate::terms::Symbol, args: &[Var]) -> Option<TermGraph> {
    let kids: Option<Vec<TermGraph>> = args.iter().map(|a| sigma.eval(a)).collect();
    Some(TermGraph::app(f.clone(), kids?))
}
