use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::atom::Atom;
use super::var::{BaseVar, Interner, Var};

/// Position of an atom in a [`Store`]. Ids grow with insertion order and are
/// never reused.
pub type AtomId = u64;

/// A conjunction of atoms, kept as a multiset with incremental indices.
///
/// The contradiction status `⊥` is absorbing: once set, the store ignores
/// further insertions.
#[derive(Debug, Clone, Default)]
pub struct Store {
    atoms: BTreeMap<AtomId, Atom>,
    next_id: AtomId,
    copies: HashMap<Atom, BTreeSet<AtomId>>,
    by_lhs: BTreeMap<Var, BTreeSet<AtomId>>,
    var_occ: HashMap<Var, usize>,
    base_occ: HashMap<BaseVar, usize>,
    bottom: bool,
}

impl PartialEq for Store {
    fn eq(&self, other: &Self) -> bool {
        self.bottom == other.bottom && congruent(self, other)
    }
}

impl Store {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_atoms(atoms: impl IntoIterator<Item = Atom>) -> Self {
        let mut store = Store::new();
        for a in atoms {
            store.insert(a);
        }
        store
    }

    pub fn bottom() -> Self {
        Store {
            bottom: true,
            ..Store::default()
        }
    }

    pub fn is_bottom(&self) -> bool {
        self.bottom
    }

    /// Collapses the store to `⊥`, dropping every atom.
    pub fn set_bottom(&mut self) {
        *self = Store::bottom();
    }

    /// Inserts a (possibly duplicate) atom. Equations are stored in
    /// canonical orientation.
    pub fn insert(&mut self, atom: Atom) -> Option<AtomId> {
        if self.bottom {
            return None;
        }
        let atom = atom.canonical();
        let id = self.next_id;
        self.next_id += 1;
        self.index(id, &atom);
        self.atoms.insert(id, atom);
        Some(id)
    }

    /// Inserts unless an identical atom is already present.
    pub fn insert_unique(&mut self, atom: Atom) -> Option<AtomId> {
        let atom = atom.canonical();
        if self.contains(&atom) {
            return None;
        }
        self.insert(atom)
    }

    pub fn remove(&mut self, id: AtomId) -> Option<Atom> {
        let atom = self.atoms.remove(&id)?;
        self.unindex(id, &atom);
        Some(atom)
    }

    /// Puts `atom` in place of atom `id`, keeping the id. If an identical
    /// atom already exists elsewhere the slot is simply removed. Returns
    /// whether the slot survived.
    pub fn replace_unique(&mut self, id: AtomId, atom: Atom) -> bool {
        let Some(old) = self.atoms.remove(&id) else {
            return false;
        };
        self.unindex(id, &old);
        let atom = atom.canonical();
        if self.contains(&atom) {
            return false;
        }
        self.index(id, &atom);
        self.atoms.insert(id, atom);
        true
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.copies.get(atom).is_some_and(|s| !s.is_empty())
    }

    pub fn get(&self, id: AtomId) -> Option<&Atom> {
        self.atoms.get(&id)
    }

    /// Atoms in id order.
    pub fn iter(&self) -> impl Iterator<Item = (AtomId, &Atom)> + '_ {
        self.atoms.iter().map(|(&id, a)| (id, a))
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> + '_ {
        self.atoms.values()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Atoms whose left-hand side is exactly `x`, in id order.
    pub fn with_lhs<'a>(&'a self, x: &Var) -> impl Iterator<Item = (AtomId, &'a Atom)> + 'a {
        self.by_lhs
            .get(x)
            .into_iter()
            .flatten()
            .map(move |id| (*id, &self.atoms[id]))
    }

    /// All variables occurring as a left-hand side.
    pub fn lhs_vars(&self) -> impl Iterator<Item = &Var> + '_ {
        self.by_lhs.keys()
    }

    /// `x ∈ V(φ)`.
    pub fn occurs(&self, x: &Var) -> bool {
        self.var_occ.get(x).is_some_and(|&n| n > 0)
    }

    /// Occurrences of `x` as a component of any variable in any atom,
    /// counted with multiplicity.
    pub fn component_occurrences(&self, x: BaseVar) -> usize {
        self.base_occ.get(&x).copied().unwrap_or(0)
    }

    /// `V(φ)`.
    pub fn vars(&self) -> BTreeSet<Var> {
        self.var_occ
            .iter()
            .filter(|(_, &n)| n > 0)
            .map(|(v, _)| v.clone())
            .collect()
    }

    /// `V(φ)` in order of first occurrence by atom id.
    pub fn vars_in_order(&self) -> Vec<Var> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for atom in self.atoms.values() {
            for v in atom.vars() {
                if seen.insert(v.clone()) {
                    out.push(v.clone());
                }
            }
        }
        out
    }

    /// `Comp(V(φ))`.
    pub fn comp_vars(&self) -> BTreeSet<BaseVar> {
        self.base_occ
            .iter()
            .filter(|(_, &n)| n > 0)
            .map(|(&b, _)| b)
            .collect()
    }

    /// `φ[to/from]` over all atoms, as a multiset.
    pub fn deep_subst(&self, from: BaseVar, to: BaseVar) -> Store {
        if self.bottom {
            return Store::bottom();
        }
        Store::from_atoms(self.atoms.values().map(|a| a.subst(from, to)))
    }

    /// Deep substitution on every atom except `keep`. Rewritten atoms keep
    /// their ids; rewrites that duplicate an existing atom are dropped.
    /// Returns the rewritten atoms.
    pub(crate) fn deep_subst_in_place(
        &mut self,
        from: BaseVar,
        to: BaseVar,
        keep: Option<AtomId>,
    ) -> Vec<Atom> {
        let targets: Vec<AtomId> = self
            .atoms
            .iter()
            .filter(|(&id, a)| Some(id) != keep && a.mentions(from))
            .map(|(&id, _)| id)
            .collect();
        let mut out = Vec::with_capacity(targets.len());
        for id in targets {
            let rewritten = self.atoms[&id].subst(from, to).canonical();
            self.replace_unique(id, rewritten.clone());
            out.push(rewritten);
        }
        out
    }

    pub fn sorted_atoms(&self) -> Vec<Atom> {
        let mut v: Vec<Atom> = self.atoms.values().cloned().collect();
        v.sort();
        v
    }

    pub fn is_base_only(&self) -> bool {
        self.atoms.values().all(Atom::is_base_only)
    }

    pub fn display<'a>(&'a self, names: &'a Interner) -> String {
        if self.bottom {
            return "⊥".to_string();
        }
        let parts: Vec<String> = self
            .atoms
            .values()
            .map(|a| a.display(names).to_string())
            .collect();
        parts.join(" ∧ ")
    }

    fn index(&mut self, id: AtomId, atom: &Atom) {
        self.copies.entry(atom.clone()).or_default().insert(id);
        self.by_lhs
            .entry(atom.lhs().clone())
            .or_default()
            .insert(id);
        for v in atom.vars() {
            *self.var_occ.entry(v.clone()).or_default() += 1;
            for &c in v.components() {
                *self.base_occ.entry(c).or_default() += 1;
            }
        }
    }

    fn unindex(&mut self, id: AtomId, atom: &Atom) {
        if let Some(set) = self.copies.get_mut(atom) {
            set.remove(&id);
            if set.is_empty() {
                self.copies.remove(atom);
            }
        }
        if let Some(set) = self.by_lhs.get_mut(atom.lhs()) {
            set.remove(&id);
            if set.is_empty() {
                self.by_lhs.remove(atom.lhs());
            }
        }
        for v in atom.vars() {
            if let Some(n) = self.var_occ.get_mut(v) {
                *n -= 1;
                if *n == 0 {
                    self.var_occ.remove(v);
                }
            }
            for &c in v.components() {
                if let Some(n) = self.base_occ.get_mut(&c) {
                    *n -= 1;
                    if *n == 0 {
                        self.base_occ.remove(&c);
                    }
                }
            }
        }
    }
}

/// Equality as multisets of canonical atoms.
pub fn congruent(phi: &Store, psi: &Store) -> bool {
    phi.sorted_atoms() == psi.sorted_atoms()
}

/// `φ[to/from]`.
pub fn deep_subst(phi: &Store, from: BaseVar, to: BaseVar) -> Store {
    phi.deep_subst(from, to)
}
