use std::collections::{BTreeMap, HashMap};

use crate::constraints::{Atom, BaseVar, Store};
use crate::terms::Symbol;

use super::unify::InputError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbeOutcome {
    /// Two different constructors are forced at the same position of
    /// `var`; the input is unsatisfiable.
    Clash {
        var: BaseVar,
        path: Vec<(Symbol, usize)>,
    },
    /// No conflict among positions of length at most the depth.
    NoClash { facts: usize },
}

impl ProbeOutcome {
    pub fn is_clash(&self) -> bool {
        matches!(self, ProbeOutcome::Clash { .. })
    }
}

type Path = Vec<(u32, u32)>;

/// How a label at a position of one variable forces a label of another.
#[derive(Debug, Clone, Copy)]
enum Link {
    /// Same position in `to`.
    Same { to: BaseVar },
    /// Position `(f, i) · p` of `to` for position `p` of the source.
    Up { to: BaseVar, sym: u32, arg: u32 },
    /// Position `p` of `to` for position `(f, i) · p` of the source.
    Down { to: BaseVar, sym: u32, arg: u32 },
}

/// Derives which constructor every variable must carry at which path.
///
/// A solution puts the label of `y` at every labeled position of `y` into
/// `x` whenever `x ⊑ y`; equations copy labels both ways, and `x = f(ȳ)`
/// moves them between `x` and its arguments. The input is satisfiable
/// exactly when the least set of such facts has no two different labels
/// at one position. This probe computes the facts for paths of length at
/// most `depth`, so a reported clash is always genuine, while `NoClash`
/// only covers the explored depth.
pub fn structure_probe(phi: &Store, depth: usize) -> Result<ProbeOutcome, InputError> {
    if phi.is_bottom() {
        return Ok(ProbeOutcome::Clash {
            var: BaseVar(0),
            path: Vec::new(),
        });
    }
    let mut syms: Vec<Symbol> = Vec::new();
    let sym_id = |f: &Symbol, syms: &mut Vec<Symbol>| -> u32 {
        match syms.iter().position(|s| s == f) {
            Some(i) => i as u32,
            None => {
                syms.push(f.clone());
                syms.len() as u32 - 1
            }
        }
    };
    let mut links: BTreeMap<BaseVar, Vec<Link>> = BTreeMap::new();
    let mut seeds: Vec<(BaseVar, u32)> = Vec::new();
    for (i, atom) in phi.atoms().enumerate() {
        if !atom.is_base_only() {
            return Err(InputError::Intersection(i));
        }
        let b = |v: &crate::constraints::Var| v.as_base().expect("base only");
        let mut link = |from: BaseVar, l: Link| links.entry(from).or_default().push(l);
        match atom {
            Atom::Eq(x, y) => {
                link(b(y), Link::Same { to: b(x) });
                link(b(x), Link::Same { to: b(y) });
            }
            Atom::Sub(x, y) => link(b(y), Link::Same { to: b(x) }),
            Atom::EqApp(x, f, args) | Atom::SubApp(x, f, args) => {
                let s = sym_id(f, &mut syms);
                seeds.push((b(x), s));
                let eq = matches!(atom, Atom::EqApp(..));
                for (i, a) in args.iter().enumerate() {
                    let i = i as u32;
                    link(
                        b(a),
                        Link::Up {
                            to: b(x),
                            sym: s,
                            arg: i,
                        },
                    );
                    if eq {
                        link(
                            b(x),
                            Link::Down {
                                to: b(a),
                                sym: s,
                                arg: i,
                            },
                        );
                    }
                }
            }
        }
    }

    let mut facts: HashMap<(BaseVar, Path), u32> = HashMap::new();
    let mut work: Vec<(BaseVar, Path, u32)> =
        seeds.into_iter().map(|(x, s)| (x, Vec::new(), s)).collect();
    while let Some((x, path, label)) = work.pop() {
        match facts.get(&(x, path.clone())) {
            Some(&l) if l == label => continue,
            Some(_) => {
                return Ok(ProbeOutcome::Clash {
                    var: x,
                    path: path
                        .iter()
                        .map(|&(s, i)| (syms[s as usize].clone(), i as usize))
                        .collect(),
                })
            }
            None => {}
        }
        facts.insert((x, path.clone()), label);
        for l in links.get(&x).into_iter().flatten() {
            match *l {
                Link::Same { to } => work.push((to, path.clone(), label)),
                Link::Up { to, sym, arg } if path.len() < depth => {
                    let mut p = Vec::with_capacity(path.len() + 1);
                    p.push((sym, arg));
                    p.extend_from_slice(&path);
                    work.push((to, p, label));
                }
                Link::Down { to, sym, arg } if path.first() == Some(&(sym, arg)) => {
                    work.push((to, path[1..].to_vec(), label));
                }
                _ => {}
            }
        }
    }
    Ok(ProbeOutcome::NoClash { facts: facts.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse;

    fn probe(src: &str, depth: usize) -> ProbeOutcome {
        let (p, _) = parse(src).unwrap();
        structure_probe(&p.store(), depth).unwrap()
    }

    #[test]
    fn descent_clash() {
        let out = probe("y = f(u). u = a(). z = f(x). x <= y. x <= z", 4);
        assert!(out.is_clash(), "{out:?}");
        assert!(!probe("y = f(u). u = a(). z = f(x). x <= z", 0).is_clash());
    }

    #[test]
    fn sat_examples() {
        assert!(!probe("x <= z. y <= z. x = a(). y = b()", 8).is_clash());
        assert!(!probe("x <= y. y = f(x)", 8).is_clash());
        assert!(!probe("x = f(u, v). x <= y. y = f(z, z)", 8).is_clash());
    }

    #[test]
    fn direct_clashes() {
        assert!(probe("x = a(). x = b()", 0).is_clash());
        assert!(probe("x <= a(). x <= b()", 0).is_clash());
        assert!(probe("x = y. x <= a(). y <= b()", 0).is_clash());
        assert!(probe("x <= f(y). y = a(). x = f(z). z = b()", 2).is_clash());
    }

    #[test]
    fn labels_do_not_flow_against_subsumption() {
        assert!(!probe("x <= y. x = a(). z <= y. z = b()", 4).is_clash());
        assert!(probe("y <= x. x = a(). y = b()", 4).is_clash());
        assert!(probe("x <= y. y <= z. x = a(). z = b()", 4).is_clash());
    }
}
