//! Matching and application of the individual simplification rules.
//!
//! Rules that rewrite an atom `A ∧ φ` evaluate their side conditions on
//! `φ`, the store without `A`. Rules of the form `φ → ψ ∧ φ` evaluate them
//! on the whole store. Within a rule, the candidate with the lowest atom
//! id wins.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::constraints::{
    determined, determined_except, immediately_determined, Application, Atom, AtomId, BaseVar,
    Store, Var,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RuleId {
    Decom,
    Clash,
    Elim,
    Propagate1,
    Propagate2,
    Collapse,
    Descend1,
    Descend2,
}

impl RuleId {
    pub const ALL: [RuleId; 8] = [
        RuleId::Decom,
        RuleId::Clash,
        RuleId::Elim,
        RuleId::Propagate1,
        RuleId::Propagate2,
        RuleId::Collapse,
        RuleId::Descend1,
        RuleId::Descend2,
    ];
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A matched rule instance, ready to be applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Firing {
    pub rule: RuleId,
    /// Atoms the match was made on.
    pub premises: Vec<AtomId>,
    pub action: Action,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    Bottom,
    /// Replace one atom, keeping its id.
    Replace {
        id: AtomId,
        with: Atom,
    },
    /// Remove one atom and add others.
    Rewrite {
        remove: AtomId,
        add: Vec<Atom>,
    },
    /// Deep-substitute `[to/from]` everywhere except atom `keep`.
    Eliminate {
        keep: AtomId,
        from: BaseVar,
        to: BaseVar,
    },
    Add(Vec<Atom>),
}

/// What applying a firing changed, for tracing.
#[derive(Debug, Clone, Default)]
pub struct Effect {
    pub produced: Vec<Atom>,
    pub eliminated: Option<(BaseVar, BaseVar)>,
}

pub fn find(rule: RuleId, phi: &Store) -> Option<Firing> {
    if phi.is_bottom() {
        return None;
    }
    match rule {
        RuleId::Decom => find_decom(phi),
        RuleId::Clash => find_clash(phi),
        RuleId::Elim => find_elim(phi),
        RuleId::Propagate1 => find_propagate1(phi),
        RuleId::Propagate2 => find_propagate2(phi),
        RuleId::Collapse => find_collapse(phi),
        RuleId::Descend1 => find_descend1(phi),
        RuleId::Descend2 => find_descend2(phi),
    }
}

/// Applies a firing found on `phi`. Added atoms that already exist are
/// dropped.
pub fn apply(phi: &mut Store, firing: &Firing) -> Effect {
    let mut effect = Effect::default();
    match &firing.action {
        Action::Bottom => phi.set_bottom(),
        Action::Replace { id, with } => {
            phi.replace_unique(*id, with.clone());
            effect.produced.push(with.clone());
        }
        Action::Rewrite { remove, add } => {
            phi.remove(*remove);
            for a in add {
                phi.insert_unique(a.clone());
                effect.produced.push(a.clone().canonical());
            }
        }
        Action::Eliminate { keep, from, to } => {
            effect.produced = phi.deep_subst_in_place(*from, *to, Some(*keep));
            effect.eliminated = Some((*from, *to));
        }
        Action::Add(atoms) => {
            for a in atoms {
                phi.insert_unique(a.clone());
                effect.produced.push(a.clone());
            }
        }
    }
    effect
}

/// Applies `rule` once to a copy of `phi`, or `None` if it does not match.
pub fn apply_rule(rule: RuleId, phi: &Store) -> Option<Store> {
    let firing = find(rule, phi)?;
    let mut out = phi.clone();
    apply(&mut out, &firing);
    Some(out)
}

pub fn rule_decom(phi: &Store) -> Option<Store> {
    apply_rule(RuleId::Decom, phi)
}

pub fn rule_clash(phi: &Store) -> Option<Store> {
    apply_rule(RuleId::Clash, phi)
}

pub fn rule_elim(phi: &Store) -> Option<Store> {
    apply_rule(RuleId::Elim, phi)
}

pub fn rule_propagate1(phi: &Store) -> Option<Store> {
    apply_rule(RuleId::Propagate1, phi)
}

pub fn rule_propagate2(phi: &Store) -> Option<Store> {
    apply_rule(RuleId::Propagate2, phi)
}

pub fn rule_collapse(phi: &Store) -> Option<Store> {
    apply_rule(RuleId::Collapse, phi)
}

pub fn rule_descend1(phi: &Store) -> Option<Store> {
    apply_rule(RuleId::Descend1, phi)
}

pub fn rule_descend2(phi: &Store) -> Option<Store> {
    apply_rule(RuleId::Descend2, phi)
}

/// `x = f(ū) ∧ φ → ū = v̄ ∧ φ` if `x = f(v̄)` in `φ`.
fn find_decom(phi: &Store) -> Option<Firing> {
    for (id, atom) in phi.iter() {
        let Atom::EqApp(x, f, us) = atom else {
            continue;
        };
        for (other, b) in phi.with_lhs(x) {
            let Atom::EqApp(_, g, vs) = b else {
                continue;
            };
            if other == id || f != g {
                continue;
            }
            let add = us
                .iter()
                .zip(vs)
                .map(|(u, v)| Atom::Eq(u.clone(), v.clone()).canonical())
                .collect();
            return Some(Firing {
                rule: RuleId::Decom,
                premises: vec![id, other],
                action: Action::Rewrite { remove: id, add },
            });
        }
    }
    None
}

/// `φ → ⊥` if `x ≤ f(ū)`, `x∩y ≤ g(v̄)` and `f ≠ g`.
fn find_clash(phi: &Store) -> Option<Firing> {
    let lhs: Vec<&Var> = phi.lhs_vars().collect();
    let mut cache: HashMap<&Var, Vec<Application>> = HashMap::new();
    for &w in &lhs {
        cache.insert(w, determined(phi, w));
    }
    for &w in &lhs {
        let dw = &cache[w];
        if dw.is_empty() {
            continue;
        }
        for &x in lhs.iter().filter(|x| x.is_component_of(w)) {
            let dx = &cache[x];
            let conflict = dx.iter().any(|(f, _)| dw.iter().any(|(g, _)| f != g));
            if conflict {
                let mut premises: Vec<AtomId> = phi.with_lhs(x).map(|(id, _)| id).collect();
                if x != w {
                    premises.extend(phi.with_lhs(w).map(|(id, _)| id));
                }
                return Some(Firing {
                    rule: RuleId::Clash,
                    premises,
                    action: Action::Bottom,
                });
            }
        }
    }
    None
}

/// `x = y ∧ φ → x = y ∧ φ[y/x]` if `x ∈ Comp(V(φ)) ∩ BV` and `x ≢ y`.
///
/// Equations are stored with the smaller variable on the left, and only
/// the left side is eliminated.
fn find_elim(phi: &Store) -> Option<Firing> {
    for (id, atom) in phi.iter() {
        let Atom::Eq(x, y) = atom else {
            continue;
        };
        let (Some(from), Some(to)) = (x.as_base(), y.as_base()) else {
            continue;
        };
        // `from` occurs once in this atom.
        if from != to && phi.component_occurrences(from) > 1 {
            return Some(Firing {
                rule: RuleId::Elim,
                premises: vec![id],
                action: Action::Eliminate { keep: id, from, to },
            });
        }
    }
    None
}

/// `x∩y ⊑ z ∧ φ → x∩y ⊑ z∩u ∧ φ` if `x ⊑ u` in `φ` and `z∩u ≢ z`.
fn find_propagate1(phi: &Store) -> Option<Firing> {
    for (id, atom) in phi.iter() {
        let Atom::Sub(w, z) = atom else {
            continue;
        };
        for x in phi.lhs_vars().filter(|x| x.is_component_of(w)) {
            for (other, b) in phi.with_lhs(x) {
                let Atom::Sub(_, u) = b else {
                    continue;
                };
                if other == id || u.is_component_of(z) {
                    continue;
                }
                return Some(Firing {
                    rule: RuleId::Propagate1,
                    premises: vec![id, other],
                    action: Action::Replace {
                        id,
                        with: Atom::Sub(w.clone(), z.intersect(u)),
                    },
                });
            }
        }
    }
    None
}

/// `x∩y ⊑ f(ū) ∧ φ → x∩y ⊑ f(ū∩v̄) ∧ φ` if `x ≤φ f(v̄)` and `ū∩v̄ ≢ ū`.
fn find_propagate2(phi: &Store) -> Option<Firing> {
    for (id, atom) in phi.iter() {
        let Atom::SubApp(w, f, us) = atom else {
            continue;
        };
        for x in phi.lhs_vars().filter(|x| x.is_component_of(w)) {
            for (g, vs) in determined_except(phi, x, Some(id)) {
                if &g != f || us.iter().zip(&vs).all(|(u, v)| v.is_component_of(u)) {
                    continue;
                }
                let merged = us.iter().zip(&vs).map(|(u, v)| u.intersect(v)).collect();
                let premises = std::iter::once(id)
                    .chain(phi.with_lhs(x).map(|(i, _)| i).filter(|&i| i != id))
                    .collect();
                return Some(Firing {
                    rule: RuleId::Propagate2,
                    premises,
                    action: Action::Replace {
                        id,
                        with: Atom::SubApp(w.clone(), f.clone(), merged),
                    },
                });
            }
        }
    }
    None
}

/// `x ⊑ y∩u ∧ φ → x ⊑ y∩z∩u ∧ φ` if `y ⊑ z` in `φ` and the right-hand
/// side actually grows.
///
/// The printed side condition of this rule is `y∩z∩u ≢ y∩z`; it is read as
/// `y∩z∩u ≢ y∩u`, since the literal condition fires on no-op rewrites and
/// blocks plain transitivity (`u ≡ y`).
fn find_collapse(phi: &Store) -> Option<Firing> {
    for (id, atom) in phi.iter() {
        let Atom::Sub(x, r) = atom else {
            continue;
        };
        for y in phi.lhs_vars().filter(|y| y.is_component_of(r)) {
            for (other, b) in phi.with_lhs(y) {
                let Atom::Sub(_, z) = b else {
                    continue;
                };
                if other == id || z.is_component_of(r) {
                    continue;
                }
                return Some(Firing {
                    rule: RuleId::Collapse,
                    premises: vec![id, other],
                    action: Action::Replace {
                        id,
                        with: Atom::Sub(x.clone(), r.intersect(z)),
                    },
                });
            }
        }
    }
    None
}

/// `x = f(ū) ∧ φ → x = f(ū) ∧ ū ⊑ v̄ ∧ φ` if `x ≤φ f(v̄)`; positions
/// already covered by some `u_i ⊑ v_i∩w_i` are skipped.
fn find_descend1(phi: &Store) -> Option<Firing> {
    for (id, atom) in phi.iter() {
        let Atom::EqApp(x, f, us) = atom else {
            continue;
        };
        for (g, vs) in determined_except(phi, x, Some(id)) {
            if &g != f {
                continue;
            }
            let add: Vec<Atom> = us
                .iter()
                .zip(&vs)
                .filter(|(u, v)| !covered(phi, u, v))
                .map(|(u, v)| Atom::Sub(u.clone(), v.clone()))
                .collect();
            if add.is_empty() {
                continue;
            }
            let premises = std::iter::once(id)
                .chain(phi.with_lhs(x).map(|(i, _)| i).filter(|&i| i != id))
                .collect();
            return Some(Firing {
                rule: RuleId::Descend1,
                premises,
                action: Action::Add(add),
            });
        }
    }
    None
}

/// Some `u ⊑ v∩w` is in the store.
fn covered(phi: &Store, u: &Var, v: &Var) -> bool {
    phi.with_lhs(u)
        .any(|(_, a)| matches!(a, Atom::Sub(_, r) if v.is_component_of(r)))
}

/// `φ → x∩y ⊑ f(ū) ∧ φ` if `x∩y ∈ V(φ)`, `x ≤φ f(ū)` and `x∩y` is not
/// immediately determined.
///
/// Only proper intersections are candidates. Candidates are tried with
/// larger intersections first, then by first occurrence.
fn find_descend2(phi: &Store) -> Option<Firing> {
    let mut candidates: Vec<Var> = phi
        .vars_in_order()
        .into_iter()
        .filter(|v| !v.is_base())
        .collect();
    candidates.sort_by_key(|v| std::cmp::Reverse(v.components().len()));
    for w in candidates {
        if !immediately_determined(phi, &w).is_empty() {
            continue;
        }
        for x in phi.lhs_vars().filter(|x| x.is_component_of(&w)) {
            if let Some((f, us)) = determined(phi, x).into_iter().next() {
                let premises = phi.with_lhs(x).map(|(i, _)| i).collect();
                return Some(Firing {
                    rule: RuleId::Descend2,
                    premises,
                    action: Action::Add(vec![Atom::SubApp(w.clone(), f, us)]),
                });
            }
        }
    }
    None
}
