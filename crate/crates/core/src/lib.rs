//! Incremental satisfiability for conjunctions of equations `x = y`,
//! `x = f(ȳ)` and weak subsumption constraints `x ⊑ y` over rational trees.
//!
//! ```
//! use wsc::engine::{solve, Verdict};
//! use wsc::frontend::parse;
//!
//! let (p, _) = parse("x <= y. y = f(x)").unwrap();
//! assert_eq!(solve(&p.store()).unwrap().verdict, Verdict::Sat);
//! ```

pub mod constraints;
pub mod engine;
pub mod frontend;
pub mod oracles;
pub mod terms;
