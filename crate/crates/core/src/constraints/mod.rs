//! Variables, atomic constraints and constraint stores.
//!
//! Variables are either base variables or intersections of base
//! variables. Intersections are kept canonical, so `x&y`, `y&x` and
//! `x&y&x` are one and the same [`Var`].

mod atom;
mod determined;
mod store;
mod var;

pub use atom::{Atom, AtomKind};
pub use determined::{
    determined, determined_except, immediately_determined, immediately_determined_except,
    Application,
};
pub use store::{congruent, deep_subst, AtomId, Store};
pub use var::{components, intersect, BaseVar, Interner, Var, FRESH_BASE};
