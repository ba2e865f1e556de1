//! Constraint files, the command line, JSON reports, random instances and
//! the bundled example corpus.
//!
//! A constraint file holds one atom per statement. Statements end at a
//! newline outside parentheses or at `.`; `#` starts a comment.
//!
//! ```text
//! # name: demo
//! # expect: sat
//! x = f(y, z).
//! x <= y.
//! z <= g(a()).
//! ```
//!
//! Variables are bare identifiers and constructors always carry
//! parentheses, so `a` is a variable and `a()` a constant.

mod cli;
mod corpus;
mod parse;
mod random;
mod report;

pub use cli::run_cli;
pub use corpus::{corpus, CorpusEntry};
pub use parse::{parse, parse_problem, parse_store, ParseError, ProblemFile};
pub use random::{generate, signature, GenConfig};
pub use report::{ClassReport, Report};

use crate::constraints::Interner;

/// Prints a problem in the format [`parse_problem`] reads.
pub fn print_problem(p: &ProblemFile, names: &Interner) -> String {
    let mut out = String::new();
    if let Some(name) = &p.name {
        out.push_str(&format!("# name: {name}\n"));
    }
    if let Some(expect) = p.expect {
        out.push_str(&format!("# expect: {expect}\n"));
    }
    for a in &p.atoms {
        out.push_str(&format!("{}\n", a.display(names)));
    }
    out
}
