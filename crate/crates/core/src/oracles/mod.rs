//! Reference procedures the engine is validated against.
//!
//! None of these share code with the rule engine beyond the data types:
//! union-find unification for the equational fragment, the naive descent
//! procedure with fresh variables, witness checking through the
//! simulation checker, a brute-force witness search, and a bounded
//! propagation of constructor labels along paths.

mod naive;
mod probe;
mod search;
mod unify;
mod witness;

pub use naive::{naive_solve, NaiveOutcome};
pub use probe::{structure_probe, ProbeOutcome};
pub use search::{candidates, witness_search, witness_search_with, SearchConfig, SearchOutcome};
pub use unify::{rational_unify, InputError, Unifier};
pub use witness::{check_witness, parse_witness, Witness, WitnessParseError};
