use std::collections::{BTreeMap, BTreeSet};

use crate::constraints::{Atom, BaseVar, Store};
use crate::terms::{Node, Symbol, TermGraph};

use super::unify::{InputError, Unifier};
use super::witness::{satisfies, Witness};

/// Bounds of the searched space.
///
/// Variables bound by an equation `x = f(ȳ)` are not enumerated: once the
/// equational part is solved, only the remaining free classes get
/// candidates, and the others follow from them. A candidate is either
///
/// - a finite tree of depth at most `max_depth` over the symbols of the
///   input, whose leaves are constants or holes named `H0`, ..,
///   `H{max_holes-1}`, or
/// - a cyclic graph `rec X. t` with `t` such a tree rooted by a
///   constructor, in which some leaves are `X`; all back-edges go to the
///   root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_depth: usize,
    pub max_holes: usize,
    /// Maximum number of candidate placements tried.
    pub cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_depth: 2,
            max_holes: 1,
            cap: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Witness),
    /// Every assignment in the space was tried; none satisfies the input.
    NotInSpace,
    /// The cap was reached before the space was covered.
    CapExceeded,
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            SearchOutcome::Found(w) => Some(w),
            _ => None,
        }
    }
}

pub fn witness_search(
    phi: &Store,
    max_depth: usize,
    max_holes: usize,
) -> Result<SearchOutcome, InputError> {
    witness_search_with(
        phi,
        &SearchConfig {
            max_depth,
            max_holes,
            ..SearchConfig::default()
        },
    )
}

pub fn witness_search_with(phi: &Store, cfg: &SearchConfig) -> Result<SearchOutcome, InputError> {
    if phi.is_bottom() {
        return Ok(SearchOutcome::NotInSpace);
    }
    let mut u = Unifier::new();
    let mut symbols = BTreeSet::new();
    for (i, atom) in phi.atoms().enumerate() {
        if let Some((f, _)) = atom.application() {
            symbols.insert(f.clone());
        }
        match atom {
            Atom::Eq(x, y) => {
                let (Some(x), Some(y)) = (x.as_base(), y.as_base()) else {
                    return Err(InputError::Intersection(i));
                };
                u.union(x, y);
            }
            Atom::EqApp(x, f, args) => {
                let Some(x) = x.as_base() else {
                    return Err(InputError::Intersection(i));
                };
                let args: Option<Vec<BaseVar>> = args.iter().map(|a| a.as_base()).collect();
                let Some(args) = args else {
                    return Err(InputError::Intersection(i));
                };
                u.bind(x, f.clone(), args);
            }
            Atom::Sub(..) | Atom::SubApp(..) => {}
        }
        if u.is_clash() {
            return Ok(SearchOutcome::NotInSpace);
        }
    }

    let vars: Vec<BaseVar> = phi.comp_vars().into_iter().collect();
    for &x in &vars {
        u.find(x);
    }
    let layout = Layout::new(&u, &vars, phi);
    let candidates = candidates(&symbols, cfg.max_depth, cfg.max_holes);

    // atoms grouped by the last free class they depend on
    let mut by_level: Vec<Vec<&Atom>> = vec![Vec::new(); layout.free.len() + 1];
    for atom in phi.atoms() {
        let mut mask = 0u64;
        for v in atom.vars() {
            for c in v.components() {
                mask |= layout.deps[&u.root(*c)];
            }
        }
        let level = 64 - mask.leading_zeros() as usize;
        by_level[level].push(atom);
    }

    let mut search = Search {
        layout: &layout,
        candidates: &candidates,
        by_level: &by_level,
        chosen: Vec::new(),
        tried: 0,
        cap: cfg.cap,
    };
    if !search.check_level(0) {
        return Ok(SearchOutcome::NotInSpace);
    }
    Ok(match search.descend() {
        Step::Found => SearchOutcome::Found(layout.witness(&search.chosen, &candidates)),
        Step::Exhausted => SearchOutcome::NotInSpace,
        Step::Capped => SearchOutcome::CapExceeded,
    })
}

/// The solved equational part: which classes are free and how the other
/// classes are built from them.
struct Layout {
    vars: Vec<BaseVar>,
    root_of: BTreeMap<BaseVar, BaseVar>,
    bound: BTreeMap<BaseVar, (Symbol, Vec<BaseVar>)>,
    free: Vec<BaseVar>,
    /// Bit `i` set when the class reaches free class `i`.
    deps: BTreeMap<BaseVar, u64>,
}

impl Layout {
    fn new(u: &Unifier, vars: &[BaseVar], phi: &Store) -> Self {
        let mut root_of = BTreeMap::new();
        let mut bound = BTreeMap::new();
        let mut free = Vec::new();
        let mut seen = BTreeSet::new();
        // free classes in order of first occurrence
        let mut order: Vec<BaseVar> = Vec::new();
        for atom in phi.atoms() {
            for v in atom.vars() {
                order.extend(v.components());
            }
        }
        let mut all: Vec<BaseVar> = vars.to_vec();
        for (_, members) in u.classes() {
            all.extend(members);
        }
        order.extend(all);
        for x in order {
            let r = u.root(x);
            root_of.insert(x, r);
            if !seen.insert(r) {
                continue;
            }
            match u.term_of(r) {
                Some((f, args)) => {
                    let args: Vec<BaseVar> = args.iter().map(|&a| u.root(a)).collect();
                    bound.insert(r, (f.clone(), args));
                }
                None => free.push(r),
            }
        }
        assert!(free.len() < 64, "too many free classes to search");
        let mut deps = BTreeMap::new();
        for &r in &seen {
            let mut mask = 0u64;
            let mut stack = vec![r];
            let mut visited = BTreeSet::new();
            while let Some(c) = stack.pop() {
                if !visited.insert(c) {
                    continue;
                }
                match bound.get(&c) {
                    Some((_, args)) => stack.extend(args.iter().copied()),
                    None => {
                        let i = free.iter().position(|&f| f == c).expect("free class");
                        mask |= 1 << i;
                    }
                }
            }
            deps.insert(r, mask);
        }
        Layout {
            vars: vars.to_vec(),
            root_of,
            bound,
            free,
            deps,
        }
    }

    /// One node array holding every class; unassigned free classes are
    /// placeholder holes.
    fn nodes(
        &self,
        chosen: &[usize],
        candidates: &[TermGraph],
    ) -> (Vec<Node>, BTreeMap<BaseVar, usize>) {
        let mut index = BTreeMap::new();
        let mut nodes = Vec::new();
        for &r in self.bound.keys() {
            index.insert(r, nodes.len());
            nodes.push(Node::Hole("".into()));
        }
        for (i, &r) in self.free.iter().enumerate() {
            match chosen.get(i) {
                Some(&c) => {
                    let g = &candidates[c];
                    let offset = nodes.len();
                    for n in g.nodes() {
                        nodes.push(match n {
                            Node::Hole(h) => Node::Hole(h.clone()),
                            Node::App(f, kids) => {
                                Node::App(f.clone(), kids.iter().map(|k| k + offset).collect())
                            }
                        });
                    }
                    index.insert(r, offset + g.root());
                }
                None => {
                    index.insert(r, nodes.len());
                    nodes.push(Node::Hole("?".into()));
                }
            }
        }
        for (r, (f, args)) in &self.bound {
            nodes[index[r]] = Node::App(f.clone(), args.iter().map(|a| index[a]).collect());
        }
        (nodes, index)
    }

    fn witness(&self, chosen: &[usize], candidates: &[TermGraph]) -> Witness {
        let (nodes, index) = self.nodes(chosen, candidates);
        let mut w = Witness::new();
        for &x in &self.vars {
            let root = index[&self.root_of[&x]];
            w.insert(
                x,
                TermGraph::from_nodes(nodes.clone(), root).expect("well-formed"),
            );
        }
        w
    }
}

enum Step {
    Found,
    Exhausted,
    Capped,
}

struct Search<'a> {
    layout: &'a Layout,
    candidates: &'a [TermGraph],
    by_level: &'a [Vec<&'a Atom>],
    chosen: Vec<usize>,
    tried: usize,
    cap: usize,
}

impl Search<'_> {
    fn check_level(&self, level: usize) -> bool {
        let atoms = &self.by_level[level];
        if atoms.is_empty() {
            return true;
        }
        let w = self.layout.witness(&self.chosen, self.candidates);
        atoms.iter().all(|a| satisfies(&w, a))
    }

    fn descend(&mut self) -> Step {
        if self.chosen.len() == self.layout.free.len() {
            return Step::Found;
        }
        for c in 0..self.candidates.len() {
            if self.tried >= self.cap {
                return Step::Capped;
            }
            self.tried += 1;
            self.chosen.push(c);
            if self.check_level(self.chosen.len()) {
                match self.descend() {
                    Step::Exhausted => {}
                    other => return other,
                }
            }
            self.chosen.pop();
        }
        Step::Exhausted
    }
}

/// Shapes before conversion to graphs; `Back` is the edge to the root.
#[derive(Clone)]
enum Shape {
    Hole(usize),
    Back,
    App(Symbol, Vec<Shape>),
}

impl Shape {
    fn has_back(&self) -> bool {
        match self {
            Shape::Back => true,
            Shape::Hole(_) => false,
            Shape::App(_, kids) => kids.iter().any(Shape::has_back),
        }
    }

    fn to_graph(&self) -> TermGraph {
        fn go(s: &Shape, nodes: &mut Vec<Node>) -> usize {
            match s {
                Shape::Back => 0,
                Shape::Hole(i) => {
                    nodes.push(Node::Hole(format!("H{i}").into()));
                    nodes.len() - 1
                }
                Shape::App(f, kids) => {
                    let at = nodes.len();
                    nodes.push(Node::Hole("".into()));
                    let ids = kids.iter().map(|k| go(k, nodes)).collect();
                    nodes[at] = Node::App(f.clone(), ids);
                    at
                }
            }
        }
        let mut nodes = Vec::new();
        go(self, &mut nodes);
        TermGraph::from_nodes(nodes, 0).expect("well-formed shape")
    }
}

fn shapes(symbols: &BTreeSet<Symbol>, depth: usize, leaves: &[Shape]) -> Vec<Shape> {
    let mut level: Vec<Shape> = leaves.to_vec();
    for _ in 0..depth {
        let mut next: Vec<Shape> = leaves.to_vec();
        for f in symbols.iter().filter(|f| f.arity() > 0) {
            let mut tuples: Vec<Vec<Shape>> = vec![Vec::new()];
            for _ in 0..f.arity() {
                tuples = tuples
                    .into_iter()
                    .flat_map(|t| {
                        level.iter().map(move |s| {
                            let mut t = t.clone();
                            t.push(s.clone());
                            t
                        })
                    })
                    .collect();
            }
            next.extend(tuples.into_iter().map(|kids| Shape::App(f.clone(), kids)));
        }
        level = next;
    }
    level
}

/// The candidate graphs, smallest first.
pub fn candidates(
    symbols: &BTreeSet<Symbol>,
    max_depth: usize,
    max_holes: usize,
) -> Vec<TermGraph> {
    let mut leaves: Vec<Shape> = (0..max_holes).map(Shape::Hole).collect();
    leaves.extend(
        symbols
            .iter()
            .filter(|f| f.arity() == 0)
            .map(|f| Shape::App(f.clone(), Vec::new())),
    );
    let mut out: Vec<TermGraph> = shapes(symbols, max_depth, &leaves)
        .iter()
        .map(Shape::to_graph)
        .collect();
    leaves.push(Shape::Back);
    let cyclic = shapes(symbols, max_depth, &leaves)
        .into_iter()
        .filter(|s| matches!(s, Shape::App(_, kids) if !kids.is_empty()) && s.has_back());
    out.extend(cyclic.map(|s| s.to_graph()));
    out.sort_by_key(TermGraph::len);
    out
}
