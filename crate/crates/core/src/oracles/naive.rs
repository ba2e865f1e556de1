use std::collections::VecDeque;

use crate::constraints::{Atom, BaseVar, Store, FRESH_BASE};

use super::unify::{InputError, Unifier};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NaiveOutcome {
    Unsat {
        descends: usize,
    },
    /// No `⊥` within the budget. `fixpoint` is set when no rule applied
    /// any more, which is still not a proof of satisfiability.
    Exhausted {
        descends: usize,
        fixpoint: bool,
    },
}

impl NaiveOutcome {
    pub fn is_unsat(&self) -> bool {
        matches!(self, NaiveOutcome::Unsat { .. })
    }
}

/// The non-terminating procedure with fresh-variable descent:
///
/// ```text
/// x ⊑ y ∧ φ  →  x = f(ū) ∧ ū ⊑ z̄ ∧ φ      if y = f(z̄) in φ, ū fresh
/// ```
///
/// plus Decom, Clash and Elim, which run eagerly (as union-find
/// unification) after every descent. The budget bounds the number of
/// descents; subsumption atoms are descended in first-in first-out order.
/// `x ⊑ f(ȳ)` is read as `x ⊑ n ∧ n = f(ȳ)` with `n` fresh.
pub fn naive_solve(phi: &Store, budget: usize) -> Result<NaiveOutcome, InputError> {
    let mut u = Unifier::new();
    let mut fresh = FRESH_BASE;
    let mut next = || {
        let v = BaseVar(fresh);
        fresh += 1;
        v
    };
    let mut subs: VecDeque<(BaseVar, BaseVar)> = VecDeque::new();
    let mut ok = true;
    for (i, atom) in phi.atoms().enumerate() {
        if !atom.is_base_only() {
            return Err(InputError::Intersection(i));
        }
        let b = |v: &crate::constraints::Var| v.as_base().expect("base only");
        match atom {
            Atom::Eq(x, y) => ok &= u.union(b(x), b(y)),
            Atom::EqApp(x, f, args) => ok &= u.bind(b(x), f.clone(), args.iter().map(b).collect()),
            Atom::Sub(x, y) => subs.push_back((b(x), b(y))),
            Atom::SubApp(x, f, args) => {
                let n = next();
                ok &= u.bind(n, f.clone(), args.iter().map(b).collect());
                subs.push_back((b(x), n));
            }
        }
    }
    if !ok || u.is_clash() || phi.is_bottom() {
        return Ok(NaiveOutcome::Unsat { descends: 0 });
    }
    let mut descends = 0;
    loop {
        let Some(pos) = subs.iter().position(|&(_, y)| u.term_of(y).is_some()) else {
            return Ok(NaiveOutcome::Exhausted {
                descends,
                fixpoint: true,
            });
        };
        if descends == budget {
            return Ok(NaiveOutcome::Exhausted {
                descends,
                fixpoint: false,
            });
        }
        let (x, y) = subs.remove(pos).expect("in range");
        let (f, zs) = u.term_of(y).cloned().expect("checked");
        let us: Vec<BaseVar> = zs.iter().map(|_| next()).collect();
        descends += 1;
        if !u.bind(x, f, us.clone()) {
            return Ok(NaiveOutcome::Unsat { descends });
        }
        subs.extend(us.into_iter().zip(zs));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse;

    fn run(src: &str, budget: usize) -> NaiveOutcome {
        let (p, _) = parse(src).unwrap();
        naive_solve(&p.store(), budget).unwrap()
    }

    #[test]
    fn loops_on_cyclic_input() {
        assert_eq!(
            run("x <= y. y = f(x)", 50),
            NaiveOutcome::Exhausted {
                descends: 50,
                fixpoint: false
            }
        );
        assert!(!run("x <= y. y = f(y)", 50).is_unsat());
    }

    #[test]
    fn descends_into_clash() {
        assert!(run("y = f(u). u = a(). z = f(x). x <= y. x <= z", 200).is_unsat());
    }

    #[test]
    fn plain_clash_within_one_step() {
        assert!(run("x = a(). x = b()", 1).is_unsat());
        assert!(run("x = a(). x = b()", 0).is_unsat());
    }

    #[test]
    fn fixpoint_without_bottom() {
        assert_eq!(
            run("x <= z. y <= z. x = a(). y = b()", 10),
            NaiveOutcome::Exhausted {
                descends: 0,
                fixpoint: true
            }
        );
    }

    #[test]
    fn sub_app_reads_as_fresh_variable() {
        assert!(run("x <= f(y). x = g(z)", 5).is_unsat());
        assert!(run("x <= f(y). y = a(). x = f(z). z = b()", 5).is_unsat());
        assert!(!run("x <= f(y). x = f(z)", 5).is_unsat());
    }
}
