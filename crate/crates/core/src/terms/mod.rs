//! Constructor symbols, rational term graphs and the weak subsumption
//! preorder on the trees they denote.
//!
//! A [`TermGraph`] is a finite rooted graph whose labeled nodes are
//! constructor applications and whose unlabeled nodes are holes (free
//! variables of the semantic domain). Cycles are allowed, so a graph
//! denotes a finite or infinite rational tree.
//!
//! The instance set of a tree treats every hole as "any tree at all", so
//! `f(a(), b())` is an instance of `f(x, x)`. [`weak_subsumes`] decides
//! inclusion of instance sets by computing the greatest simulation between
//! two graphs.

mod graph;
mod simulation;
mod syntax;

use std::fmt;
use std::sync::Arc;

pub use graph::{GraphError, Node, NodeId, TermGraph};
pub use simulation::{graph_equal, instance_member, meet, weak_subsumes};
pub use syntax::{parse_term, TermSyntaxError};

/// A constructor, identified by its name together with its arity.
///
/// `f/1` and `f/2` are different symbols.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    name: Arc<str>,
    arity: usize,
}

impl Symbol {
    pub fn new(name: impl AsRef<str>, arity: usize) -> Self {
        Symbol {
            name: Arc::from(name.as_ref()),
            arity,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

/// Characters allowed in identifiers of the textual syntaxes.
pub(crate) fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}
