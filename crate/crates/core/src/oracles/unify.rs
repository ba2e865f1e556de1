use std::collections::BTreeMap;

use thiserror::Error;

use crate::constraints::{Atom, BaseVar, Store};
use crate::terms::Symbol;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("atom #{0} is a subsumption constraint")]
    Subsumption(usize),
    #[error("atom #{0} contains an intersection variable")]
    Intersection(usize),
}

/// Union-find over base variables where each class may carry one
/// constructor application. Cycles are allowed, so there is no occurs
/// check.
#[derive(Debug, Clone, Default)]
pub struct Unifier {
    parent: BTreeMap<BaseVar, BaseVar>,
    term: BTreeMap<BaseVar, (Symbol, Vec<BaseVar>)>,
    clash: bool,
}

impl Unifier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn find(&mut self, x: BaseVar) -> BaseVar {
        let p = *self.parent.entry(x).or_insert(x);
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.parent.insert(x, r);
        r
    }

    /// Representative without path compression.
    pub fn root(&self, mut x: BaseVar) -> BaseVar {
        while let Some(&p) = self.parent.get(&x) {
            if p == x {
                break;
            }
            x = p;
        }
        x
    }

    pub fn is_clash(&self) -> bool {
        self.clash
    }

    /// The constructor equation of the class of `x`.
    pub fn term_of(&self, x: BaseVar) -> Option<&(Symbol, Vec<BaseVar>)> {
        self.term.get(&self.root(x))
    }

    /// `x = y`. Returns `false` on a constructor clash.
    pub fn union(&mut self, x: BaseVar, y: BaseVar) -> bool {
        let mut pending = vec![(x, y)];
        while let Some((a, b)) = pending.pop() {
            let (ra, rb) = (self.find(a), self.find(b));
            if ra == rb {
                continue;
            }
            let (keep, gone) = (ra.min(rb), ra.max(rb));
            self.parent.insert(gone, keep);
            let Some(tg) = self.term.remove(&gone) else {
                continue;
            };
            match self.term.get(&keep) {
                None => {
                    self.term.insert(keep, tg);
                }
                Some((f, args)) => {
                    if *f != tg.0 {
                        self.clash = true;
                        return false;
                    }
                    pending.extend(args.iter().copied().zip(tg.1));
                }
            }
        }
        true
    }

    /// `x = f(ȳ)`. Returns `false` on a constructor clash.
    pub fn bind(&mut self, x: BaseVar, f: Symbol, args: Vec<BaseVar>) -> bool {
        for &a in &args {
            self.find(a);
        }
        let r = self.find(x);
        match self.term.get(&r) {
            None => {
                self.term.insert(r, (f, args));
                true
            }
            Some((g, old)) => {
                if *g != f {
                    self.clash = true;
                    return false;
                }
                let pairs: Vec<_> = old.iter().copied().zip(args).collect();
                pairs.into_iter().all(|(a, b)| self.union(a, b))
            }
        }
    }

    /// All variables seen, grouped by class representative.
    pub fn classes(&self) -> BTreeMap<BaseVar, Vec<BaseVar>> {
        let mut out: BTreeMap<BaseVar, Vec<BaseVar>> = BTreeMap::new();
        for &x in self.parent.keys() {
            out.entry(self.root(x)).or_default().push(x);
        }
        out
    }
}

/// Whether the equations of `phi` are unifiable over rational trees.
/// Returns the unifier either way; check [`Unifier::is_clash`].
pub fn rational_unify(phi: &Store) -> Result<Unifier, InputError> {
    let mut u = Unifier::new();
    for (i, atom) in phi.atoms().enumerate() {
        if !atom.is_base_only() {
            return Err(InputError::Intersection(i));
        }
        let base = |v: &crate::constraints::Var| v.as_base().expect("base only");
        match atom {
            Atom::Eq(x, y) => {
                u.union(base(x), base(y));
            }
            Atom::EqApp(x, f, args) => {
                u.bind(base(x), f.clone(), args.iter().map(base).collect());
            }
            Atom::Sub(..) | Atom::SubApp(..) => return Err(InputError::Subsumption(i)),
        }
        if u.is_clash() {
            break;
        }
    }
    Ok(u)
}
