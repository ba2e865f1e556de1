use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::rules::{self, RuleId};
use crate::constraints::{Atom, BaseVar, Interner, Store, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Sat,
    Unsat,
    /// Rules may still apply: atoms were inserted without running to a
    /// fixpoint, or the step limit was hit.
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Sat => "sat",
            Verdict::Unsat => "unsat",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("input atom #{0} contains an intersection variable")]
    IntersectionInInput(usize),
    #[error("priority must list every rule exactly once")]
    BadPriority,
}

/// The order in which rules are tried at each step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Priority([RuleId; 8]);

impl Priority {
    /// Clash, Elim, Decom, Propagate1, Propagate2, Collapse, Descend2,
    /// Descend1.
    pub const DEFAULT: Priority = Priority([
        RuleId::Clash,
        RuleId::Elim,
        RuleId::Decom,
        RuleId::Propagate1,
        RuleId::Propagate2,
        RuleId::Collapse,
        RuleId::Descend2,
        RuleId::Descend1,
    ]);

    /// A deliberately different order, with the growing rules first and
    /// Clash last.
    pub const SCRAMBLED: Priority = Priority([
        RuleId::Descend1,
        RuleId::Collapse,
        RuleId::Descend2,
        RuleId::Propagate2,
        RuleId::Decom,
        RuleId::Propagate1,
        RuleId::Elim,
        RuleId::Clash,
    ]);

    pub fn new(order: [RuleId; 8]) -> Result<Self, SolveError> {
        let mut sorted = order;
        sorted.sort();
        if sorted != RuleId::ALL {
            return Err(SolveError::BadPriority);
        }
        Ok(Priority(order))
    }

    pub fn order(&self) -> &[RuleId; 8] {
        &self.0
    }
}

impl Default for Priority {
    fn default() -> Self {
        Priority::DEFAULT
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub step: usize,
    pub rule: RuleId,
    pub premises: Vec<Atom>,
    pub produced: Vec<Atom>,
    pub bottom: bool,
}

impl TraceEntry {
    /// `step N: <Rule> on <atoms> => <atoms>`
    pub fn render(&self, names: &Interner) -> String {
        let list = |atoms: &[Atom]| {
            atoms
                .iter()
                .map(|a| a.display(names).to_string())
                .collect::<Vec<_>>()
                .join(" ∧ ")
        };
        let result = if self.bottom {
            "⊥".to_string()
        } else {
            list(&self.produced)
        };
        format!(
            "step {}: {} on {} => {}",
            self.step,
            self.rule,
            list(&self.premises),
            result
        )
    }
}

/// An equivalence class of the solved form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Class {
    pub members: Vec<BaseVar>,
    /// The constructor equation of the class, if any.
    pub term: Option<(crate::terms::Symbol, Vec<Var>)>,
}

/// Incremental solver running the rule system to a fixpoint.
#[derive(Debug, Clone)]
pub struct Solver {
    store: Store,
    elim: BTreeMap<BaseVar, BaseVar>,
    trace: Option<Vec<TraceEntry>>,
    steps: usize,
    priority: Priority,
    step_limit: Option<usize>,
    verdict: Verdict,
}

impl Default for Solver {
    fn default() -> Self {
        Solver::new()
    }
}

impl Solver {
    pub fn new() -> Self {
        Solver {
            store: Store::new(),
            elim: BTreeMap::new(),
            trace: None,
            steps: 0,
            priority: Priority::DEFAULT,
            step_limit: None,
            verdict: Verdict::Sat,
        }
    }

    pub fn with_priority(mut self, priority: Priority) -> Self {
        self.priority = priority;
        self
    }

    pub fn with_trace(mut self, on: bool) -> Self {
        self.trace = on.then(Vec::new);
        self
    }

    /// Stop with [`Verdict::Unknown`] after this many steps in total.
    pub fn with_step_limit(mut self, limit: Option<usize>) -> Self {
        self.step_limit = limit;
        self
    }

    pub fn store(&self) -> &Store {
        &self.store
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    pub fn trace(&self) -> &[TraceEntry] {
        self.trace.as_deref().unwrap_or(&[])
    }

    /// Eliminated variables and what they were replaced by, fully resolved.
    pub fn elim_record(&self) -> &BTreeMap<BaseVar, BaseVar> {
        &self.elim
    }

    /// Current representative of `x` after eliminations.
    pub fn resolve(&self, x: BaseVar) -> BaseVar {
        self.elim.get(&x).copied().unwrap_or(x)
    }

    /// Adds an atom without running the rules. Returns `false` when the
    /// store already contained it (or is `⊥`).
    pub fn insert(&mut self, atom: Atom) -> Result<bool, SolveError> {
        if !atom.is_base_only() {
            return Err(SolveError::IntersectionInInput(0));
        }
        if self.verdict == Verdict::Unsat {
            return Ok(false);
        }
        let atom = atom.map_vars(|v| Var::base(self.resolve(v.as_base().expect("base only"))));
        let fresh = self.store.insert_unique(atom).is_some();
        if fresh {
            self.verdict = Verdict::Unknown;
        }
        Ok(fresh)
    }

    /// Inserts the atom and resumes simplification to a fixpoint.
    pub fn assert_atom(&mut self, atom: Atom) -> Result<Verdict, SolveError> {
        if self.verdict == Verdict::Unsat {
            return Ok(Verdict::Unsat);
        }
        self.insert(atom)?;
        Ok(self.run())
    }

    /// Applies the first applicable rule in priority order.
    pub fn step(&mut self) -> bool {
        if self.store.is_bottom() {
            return false;
        }
        for &rule in self.priority.order() {
            let Some(firing) = rules::find(rule, &self.store) else {
                continue;
            };
            let premises: Vec<Atom> = match &self.trace {
                Some(_) => firing
                    .premises
                    .iter()
                    .filter_map(|&id| self.store.get(id).cloned())
                    .collect(),
                None => Vec::new(),
            };
            let effect = rules::apply(&mut self.store, &firing);
            if let Some((from, to)) = effect.eliminated {
                self.record_elim(from, to);
            }
            self.steps += 1;
            if let Some(trace) = &mut self.trace {
                trace.push(TraceEntry {
                    step: self.steps,
                    rule,
                    premises,
                    produced: effect.produced,
                    bottom: self.store.is_bottom(),
                });
            }
            if self.store.is_bottom() {
                self.verdict = Verdict::Unsat;
            }
            return true;
        }
        false
    }

    /// Steps until no rule applies, `⊥` is reached, or the step limit runs
    /// out.
    pub fn run(&mut self) -> Verdict {
        loop {
            if self.store.is_bottom() {
                self.verdict = Verdict::Unsat;
                return self.verdict;
            }
            if self.step_limit.is_some_and(|l| self.steps >= l) {
                self.verdict = Verdict::Unknown;
                return self.verdict;
            }
            if !self.step() {
                self.verdict = if self.store.is_bottom() {
                    Verdict::Unsat
                } else {
                    Verdict::Sat
                };
                return self.verdict;
            }
        }
    }

    fn record_elim(&mut self, from: BaseVar, to: BaseVar) {
        for target in self.elim.values_mut() {
            if *target == from {
                *target = to;
            }
        }
        self.elim.insert(from, to);
    }

    /// Equivalence classes induced by the equations of the store and the
    /// elimination record, each with its constructor equation if any.
    pub fn classes(&self) -> Vec<Class> {
        let mut parent: BTreeMap<BaseVar, BaseVar> = BTreeMap::new();
        fn find(parent: &mut BTreeMap<BaseVar, BaseVar>, x: BaseVar) -> BaseVar {
            let p = *parent.entry(x).or_insert(x);
            if p == x {
                return x;
            }
            let r = find(parent, p);
            parent.insert(x, r);
            r
        }
        let union = |parent: &mut BTreeMap<BaseVar, BaseVar>, a: BaseVar, b: BaseVar| {
            let (ra, rb) = (find(parent, a), find(parent, b));
            if ra != rb {
                parent.insert(ra.max(rb), ra.min(rb));
            }
        };
        for (&from, &to) in &self.elim {
            union(&mut parent, from, to);
        }
        for atom in self.store.atoms() {
            for v in atom.vars() {
                for &c in v.components() {
                    find(&mut parent, c);
                }
            }
            if let Atom::Eq(x, y) = atom {
                if let (Some(a), Some(b)) = (x.as_base(), y.as_base()) {
                    union(&mut parent, a, b);
                }
            }
        }
        let keys: Vec<BaseVar> = parent.keys().copied().collect();
        let mut groups: BTreeMap<BaseVar, Vec<BaseVar>> = BTreeMap::new();
        for x in keys {
            let r = find(&mut parent, x);
            groups.entry(r).or_default().push(x);
        }
        let mut out = Vec::new();
        for (_, members) in groups {
            let term = self.store.atoms().find_map(|a| match a {
                Atom::EqApp(x, f, args) if x.as_base().is_some_and(|b| members.contains(&b)) => {
                    Some((f.clone(), args.clone()))
                }
                _ => None,
            });
            out.push(Class { members, term });
        }
        out
    }
}

/// Result of a batch run.
#[derive(Debug, Clone)]
pub struct Solved {
    pub verdict: Verdict,
    pub store: Store,
    pub steps: usize,
}

/// Runs the rule system on `phi` to a fixpoint.
pub fn solve(phi: &Store) -> Result<Solved, SolveError> {
    solve_with(phi, Priority::DEFAULT)
}

pub fn solve_with(phi: &Store, priority: Priority) -> Result<Solved, SolveError> {
    let mut solver = Solver::new().with_priority(priority);
    load(&mut solver, phi.atoms().cloned())?;
    let verdict = solver.run();
    Ok(Solved {
        verdict,
        store: solver.store.clone(),
        steps: solver.steps,
    })
}

/// Inserts all atoms, rejecting intersection variables.
pub fn load(solver: &mut Solver, atoms: impl IntoIterator<Item = Atom>) -> Result<(), SolveError> {
    for (i, atom) in atoms.into_iter().enumerate() {
        if !atom.is_base_only() {
            return Err(SolveError::IntersectionInInput(i));
        }
        solver.insert(atom)?;
    }
    Ok(())
}
