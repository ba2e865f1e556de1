use std::fmt;

use super::var::{BaseVar, Interner, Var};
use crate::terms::Symbol;

/// The four atomic constraint forms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// `x = y`
    Eq(Var, Var),
    /// `x = f(y1, ..., yn)`
    EqApp(Var, Symbol, Vec<Var>),
    /// `x ⊑ y`: x has at least the structure of y.
    Sub(Var, Var),
    /// `x ⊑ f(y1, ..., yn)`, short for `∃u. x ⊑ u ∧ u = f(y1, ..., yn)`.
    SubApp(Var, Symbol, Vec<Var>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomKind {
    Eq,
    EqApp,
    Sub,
    SubApp,
}

impl Atom {
    pub fn eq(x: impl Into<Var>, y: impl Into<Var>) -> Self {
        Atom::Eq(x.into(), y.into()).canonical()
    }

    pub fn eq_app(x: impl Into<Var>, sym: Symbol, args: Vec<Var>) -> Self {
        assert_eq!(sym.arity(), args.len(), "arity mismatch for {sym}");
        Atom::EqApp(x.into(), sym, args)
    }

    pub fn sub(x: impl Into<Var>, y: impl Into<Var>) -> Self {
        Atom::Sub(x.into(), y.into())
    }

    pub fn sub_app(x: impl Into<Var>, sym: Symbol, args: Vec<Var>) -> Self {
        assert_eq!(sym.arity(), args.len(), "arity mismatch for {sym}");
        Atom::SubApp(x.into(), sym, args)
    }

    /// Equations are unordered; the canonical orientation puts the smaller
    /// variable on the left. Other atoms are returned unchanged.
    pub fn canonical(self) -> Self {
        match self {
            Atom::Eq(x, y) if y < x => Atom::Eq(y, x),
            other => other,
        }
    }

    pub fn kind(&self) -> AtomKind {
        match self {
            Atom::Eq(..) => AtomKind::Eq,
            Atom::EqApp(..) => AtomKind::EqApp,
            Atom::Sub(..) => AtomKind::Sub,
            Atom::SubApp(..) => AtomKind::SubApp,
        }
    }

    pub fn lhs(&self) -> &Var {
        match self {
            Atom::Eq(x, _) | Atom::EqApp(x, ..) | Atom::Sub(x, _) | Atom::SubApp(x, ..) => x,
        }
    }

    /// The constructor part of `EqApp`/`SubApp` atoms.
    pub fn application(&self) -> Option<(&Symbol, &[Var])> {
        match self {
            Atom::EqApp(_, f, args) | Atom::SubApp(_, f, args) => Some((f, args)),
            _ => None,
        }
    }

    /// Variable occurrences, left to right.
    pub fn vars(&self) -> Vec<&Var> {
        match self {
            Atom::Eq(x, y) | Atom::Sub(x, y) => vec![x, y],
            Atom::EqApp(x, _, args) | Atom::SubApp(x, _, args) => {
                std::iter::once(x).chain(args.iter()).collect()
            }
        }
    }

    pub fn mentions(&self, b: BaseVar) -> bool {
        self.vars().iter().any(|v| v.contains(b))
    }

    pub fn is_base_only(&self) -> bool {
        self.vars().iter().all(|v| v.is_base())
    }

    pub fn map_vars(&self, mut f: impl FnMut(&Var) -> Var) -> Atom {
        match self {
            Atom::Eq(x, y) => Atom::Eq(f(x), f(y)).canonical(),
            Atom::Sub(x, y) => Atom::Sub(f(x), f(y)),
            Atom::EqApp(x, s, args) => Atom::EqApp(f(x), s.clone(), args.iter().map(f).collect()),
            Atom::SubApp(x, s, args) => {
                let lhs = f(x);
                Atom::SubApp(lhs, s.clone(), args.iter().map(f).collect())
            }
        }
    }

    /// Deep substitution `[to/from]`.
    pub fn subst(&self, from: BaseVar, to: BaseVar) -> Atom {
        self.map_vars(|v| v.subst(from, to))
    }

    /// Canonical text: `x = y`, `x = f(y, z)`, `x <= y`, `x <= f(y, z)`.
    pub fn display<'a>(&'a self, names: &'a Interner) -> impl fmt::Display + 'a {
        AtomDisplay { atom: self, names }
    }
}

struct AtomDisplay<'a> {
    atom: &'a Atom,
    names: &'a Interner,
}

impl fmt::Display for AtomDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.names;
        let app = |f: &mut fmt::Formatter<'_>, sym: &Symbol, args: &[Var]| {
            let args: Vec<String> = args.iter().map(|a| a.display(n).to_string()).collect();
            write!(f, "{}({})", sym.name(), args.join(", "))
        };
        match self.atom {
            Atom::Eq(x, y) => write!(f, "{} = {}", x.display(n), y.display(n)),
            Atom::Sub(x, y) => write!(f, "{} <= {}", x.display(n), y.display(n)),
            Atom::EqApp(x, s, args) => {
                write!(f, "{} = ", x.display(n))?;
                app(f, s, args)
            }
            Atom::SubApp(x, s, args) => {
                write!(f, "{} <= ", x.display(n))?;
                app(f, s, args)
            }
        }
    }
}
