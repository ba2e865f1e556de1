//! The terminating simplification system and an incremental solver built
//! on it.
//!
//! Unification part: Decom, Clash, Elim. Subsumption part: Propagate1,
//! Propagate2, Collapse, Descend1, Descend2. Intersection variables stand in
//! for the fresh variables a naive descent would introduce, which is what
//! makes the system terminate: over a fixed set of base variables there
//! are only finitely many atoms.

mod rules;
mod solver;

pub use rules::{
    apply, apply_rule, find, rule_clash, rule_collapse, rule_decom, rule_descend1, rule_descend2,
    rule_elim, rule_propagate1, rule_propagate2, Action, Effect, Firing, RuleId,
};
pub use solver::{
    load, solve, solve_with, Class, Priority, SolveError, Solved, Solver, TraceEntry, Verdict,
};
