//! Which constructors a variable is known to carry.
//!
//! `x` is *immediately determined* by `f(ū)` when `x = f(ū)` or `x ⊑ f(ū)`
//! is in the store. It is *determined* by `f(ū)` when it is immediately
//! determined, or when `x ⊑ r` is in the store and some component `y` of
//! `r` is immediately determined by `f(ū)`. In either case the top
//! constructor of `x` must be `f`.
//!
//! Components here are taken in the general sense: any variable whose
//! component set is contained in that of `r`, including `r` itself.

use super::store::{AtomId, Store};
use super::var::Var;
use crate::terms::Symbol;

pub type Application = (Symbol, Vec<Var>);

pub fn immediately_determined(phi: &Store, x: &Var) -> Vec<Application> {
    immediately_determined_except(phi, x, None)
}

pub fn determined(phi: &Store, x: &Var) -> Vec<Application> {
    determined_except(phi, x, None)
}

/// As [`immediately_determined`], ignoring atom `skip`.
pub fn immediately_determined_except(
    phi: &Store,
    x: &Var,
    skip: Option<AtomId>,
) -> Vec<Application> {
    let mut out = Vec::new();
    for (id, atom) in phi.with_lhs(x) {
        if Some(id) == skip {
            continue;
        }
        if let Some((f, args)) = atom.application() {
            push_unique(&mut out, (f.clone(), args.to_vec()));
        }
    }
    out
}

/// As [`determined`], ignoring atom `skip`.
pub fn determined_except(phi: &Store, x: &Var, skip: Option<AtomId>) -> Vec<Application> {
    let mut out = immediately_determined_except(phi, x, skip);
    for (id, atom) in phi.with_lhs(x) {
        if Some(id) == skip {
            continue;
        }
        let crate::constraints::Atom::Sub(_, r) = atom else {
            continue;
        };
        for y in phi.lhs_vars() {
            if !y.is_component_of(r) {
                continue;
            }
            for app in immediately_determined_except(phi, y, skip) {
                push_unique(&mut out, app);
            }
        }
    }
    out
}

fn push_unique(out: &mut Vec<Application>, app: Application) {
    if !out.contains(&app) {
        out.push(app);
    }
}
