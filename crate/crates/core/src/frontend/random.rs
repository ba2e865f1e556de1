use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constraints::{Atom, BaseVar, Interner, Var};
use crate::terms::Symbol;

use super::ProblemFile;

/// Shape of generated instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    pub vars: usize,
    pub symbols: usize,
    pub max_arity: usize,
    pub atoms: usize,
    /// Only `x = y` and `x = f(ȳ)` atoms.
    pub sub_free: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            vars: 4,
            symbols: 3,
            max_arity: 2,
            atoms: 8,
            sub_free: false,
        }
    }
}

const VAR_NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
const SYM_NAMES: [&str; 6] = ["a", "f", "g", "h", "k", "m"];

/// The signature used for `n` symbols: one constant, then symbols of
/// decreasing arity starting at `max_arity`.
pub fn signature(n: usize, max_arity: usize) -> Vec<Symbol> {
    (0..n)
        .map(|i| {
            let name = SYM_NAMES
                .get(i)
                .map_or_else(|| format!("s{i}"), |s| s.to_string());
            let arity = if i == 0 || max_arity == 0 {
                0
            } else {
                max_arity - (i - 1) % max_arity
            };
            Symbol::new(name, arity)
        })
        .collect()
}

/// Generates an instance with exactly `cfg.atoms` atoms over base
/// variables only. Equal seeds give equal instances.
pub fn generate(seed: u64, cfg: &GenConfig) -> (ProblemFile, Interner) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut names = Interner::new();
    let vars: Vec<BaseVar> = (0..cfg.vars.max(1))
        .map(|i| match VAR_NAMES.get(i) {
            Some(n) => names.intern(n),
            None => names.intern(&format!("x{i}")),
        })
        .collect();
    let sig = signature(cfg.symbols, cfg.max_arity);
    let atoms = (0..cfg.atoms)
        .map(|_| random_atom(&mut rng, &vars, &sig, cfg.sub_free))
        .collect();
    let problem = ProblemFile {
        name: Some(format!("random-{seed}")),
        expect: None,
        atoms,
    };
    (problem, names)
}

fn random_atom(rng: &mut ChaCha8Rng, vars: &[BaseVar], sig: &[Symbol], sub_free: bool) -> Atom {
    let pick = |rng: &mut ChaCha8Rng| Var::base(*vars.choose(rng).expect("vars"));
    // weights: x = y 2, x = f(ȳ) 4, x <= y 3, x <= f(ȳ) 1
    let mut roll = if sub_free {
        rng.gen_range(0..6)
    } else {
        rng.gen_range(0..10)
    };
    if sig.is_empty() && matches!(roll, 2..=5 | 9) {
        roll = if roll == 9 { 6 } else { 0 };
    }
    match roll {
        0 | 1 => Atom::Eq(pick(rng), pick(rng)).canonical(),
        2..=5 => {
            let f = sig.choose(rng).expect("sig").clone();
            let x = pick(rng);
            let args = (0..f.arity()).map(|_| pick(rng)).collect();
            Atom::EqApp(x, f, args)
        }
        6..=8 => Atom::Sub(pick(rng), pick(rng)),
        _ => {
            let f = sig.choose(rng).expect("sig").clone();
            let x = pick(rng);
            let args = (0..f.arity()).map(|_| pick(rng)).collect();
            Atom::SubApp(x, f, args)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::AtomKind;

    #[test]
    fn signature_shapes() {
        let sig = signature(3, 2);
        let arities: Vec<usize> = sig.iter().map(Symbol::arity).collect();
        assert_eq!(arities, vec![0, 2, 1]);
        assert_eq!(signature(2, 2)[1], Symbol::new("f", 2));
        assert!(signature(2, 0).iter().all(|s| s.arity() == 0));
    }

    #[test]
    fn deterministic_per_seed() {
        let cfg = GenConfig::default();
        assert_eq!(generate(7, &cfg).0, generate(7, &cfg).0);
        assert_ne!(generate(7, &cfg).0, generate(8, &cfg).0);
    }

    #[test]
    fn sub_free_has_no_subsumption() {
        let cfg = GenConfig {
            sub_free: true,
            atoms: 30,
            ..GenConfig::default()
        };
        for seed in 0..20 {
            let (p, _) = generate(seed, &cfg);
            assert_eq!(p.atoms.len(), 30);
            assert!(p
                .atoms
                .iter()
                .all(|a| matches!(a.kind(), AtomKind::Eq | AtomKind::EqApp)));
        }
    }

    #[test]
    fn respects_vocabulary() {
        let cfg = GenConfig {
            vars: 3,
            symbols: 0,
            atoms: 20,
            ..GenConfig::default()
        };
        let (p, names) = generate(1, &cfg);
        assert_eq!(names.len(), 3);
        assert!(p
            .atoms
            .iter()
            .all(|a| a.application().is_none() && a.is_base_only()));
    }
}
