use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// An interned base variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BaseVar(pub u32);

/// A base variable or an intersection of base variables.
///
/// Stored as a sorted, duplicate-free, nonempty component list, so two
/// variables are congruent under commutativity, associativity and
/// idempotence of `∩` exactly when their representations are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Vec<BaseVar>);

impl Var {
    pub fn base(x: BaseVar) -> Self {
        Var(vec![x])
    }

    /// Panics on an empty component list.
    pub fn from_components(comps: impl IntoIterator<Item = BaseVar>) -> Self {
        let mut v: Vec<BaseVar> = comps.into_iter().collect();
        assert!(!v.is_empty(), "a variable needs at least one component");
        v.sort_unstable();
        v.dedup();
        Var(v)
    }

    pub fn components(&self) -> &[BaseVar] {
        &self.0
    }

    pub fn is_base(&self) -> bool {
        self.0.len() == 1
    }

    pub fn as_base(&self) -> Option<BaseVar> {
        match self.0.as_slice() {
            [x] => Some(*x),
            _ => None,
        }
    }

    /// `self ∩ other`.
    pub fn intersect(&self, other: &Var) -> Var {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Var(out)
    }

    /// `self` is a component of `other`: `other ≡ self ∩ z` for some `z`,
    /// i.e. the component set of `self` is contained in that of `other`.
    pub fn is_component_of(&self, other: &Var) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|x| it.any(|y| y == x))
    }

    pub fn contains(&self, x: BaseVar) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    /// Deep substitution `[to/from]`, applied componentwise.
    pub fn subst(&self, from: BaseVar, to: BaseVar) -> Var {
        if !self.contains(from) {
            return self.clone();
        }
        Var::from_components(self.0.iter().map(|&c| if c == from { to } else { c }))
    }

    pub fn display<'a>(&'a self, names: &'a Interner) -> impl fmt::Display + 'a {
        VarDisplay { var: self, names }
    }
}

/// Component set of a variable.
pub fn components(x: &Var) -> BTreeSet<BaseVar> {
    x.0.iter().copied().collect()
}

/// `x ∩ y`.
pub fn intersect(x: &Var, y: &Var) -> Var {
    x.intersect(y)
}

impl From<BaseVar> for Var {
    fn from(x: BaseVar) -> Self {
        Var::base(x)
    }
}

struct VarDisplay<'a> {
    var: &'a Var,
    names: &'a Interner,
}

impl fmt::Display for VarDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Components print in name order so the text is canonical.
        let mut parts: Vec<&str> = self.var.0.iter().map(|&x| self.names.name(x)).collect();
        parts.sort_unstable();
        f.write_str(&parts.join("&"))
    }
}

/// Id range reserved for variables introduced by the reference procedures.
pub const FRESH_BASE: u32 = 1 << 30;

/// Bidirectional map between variable names and [`BaseVar`] ids.
#[derive(Debug, Clone, Default)]
pub struct Interner {
    names: Vec<String>,
    ids: HashMap<String, BaseVar>,
    fresh: Vec<String>,
}

impl Interner {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, name: &str) -> BaseVar {
        if let Some(&id) = self.ids.get(name) {
            return id;
        }
        let id = BaseVar(self.names.len() as u32);
        assert!(id.0 < FRESH_BASE, "variable supply exhausted");
        self.names.push(name.to_string());
        self.ids.insert(name.to_string(), id);
        id
    }

    pub fn get(&self, name: &str) -> Option<BaseVar> {
        self.ids.get(name).copied()
    }

    /// A variable from the reserved range, named `_n<k>`.
    pub fn fresh(&mut self) -> BaseVar {
        let k = self.fresh.len() as u32;
        let name = format!("_n{k}");
        self.ids.insert(name.clone(), BaseVar(FRESH_BASE + k));
        self.fresh.push(name);
        BaseVar(FRESH_BASE + k)
    }

    pub fn name(&self, x: BaseVar) -> &str {
        if x.0 >= FRESH_BASE {
            self.fresh
                .get((x.0 - FRESH_BASE) as usize)
                .map(String::as_str)
                .unwrap_or("_n?")
        } else {
            self.names
                .get(x.0 as usize)
                .map(String::as_str)
                .unwrap_or("_?")
        }
    }

    /// Number of ordinary (non-fresh) variables.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = BaseVar> + '_ {
        (0..self.names.len() as u32).map(BaseVar)
    }
}
