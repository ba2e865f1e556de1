use std::collections::HashMap;

use super::graph::{Node, NodeId, TermGraph};

/// Decides `Inst(t) ⊆ Inst(s)`: every instance of `t` is an instance of `s`.
///
/// This holds iff the nodes of `s` are simulated by the nodes of `t`: a
/// labeled node of `s` must be matched by a node of `t` carrying the same
/// symbol (and therefore arity), with children related pairwise. Holes of
/// `s` are matched by anything; hole names play no role.
pub fn weak_subsumes(s: &TermGraph, t: &TermGraph) -> bool {
    let (n, m) = (s.len(), t.len());
    let mut rel = vec![true; n * m];
    loop {
        let mut changed = false;
        for i in 0..n {
            let Node::App(sym, kids) = s.node(i) else {
                continue;
            };
            for j in 0..m {
                if !rel[i * m + j] {
                    continue;
                }
                let keep = match t.node(j) {
                    Node::App(other, tkids) if other == sym => {
                        kids.iter().zip(tkids).all(|(&a, &b)| rel[a * m + b])
                    }
                    _ => false,
                };
                if !keep {
                    rel[i * m + j] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    rel[s.root() * m + t.root()]
}

/// Equality of the denoted rational trees, hole names included.
pub fn graph_equal(s: &TermGraph, t: &TermGraph) -> bool {
    let (n, m) = (s.len(), t.len());
    let mut rel = vec![true; n * m];
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..m {
                if !rel[i * m + j] {
                    continue;
                }
                let keep = match (s.node(i), t.node(j)) {
                    (Node::Hole(a), Node::Hole(b)) => a == b,
                    (Node::App(f, ak), Node::App(g, bk)) => {
                        f == g && ak.iter().zip(bk).all(|(&a, &b)| rel[a * m + b])
                    }
                    _ => false,
                };
                if !keep {
                    rel[i * m + j] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    rel[s.root() * m + t.root()]
}

/// Bounded probe of `t ∈ Inst(s)`: walks both trees in lockstep and reports
/// a disagreement at any position of path length below `depth` where `s`
/// is labeled and `t` is not labeled with the same symbol.
pub fn instance_member(t: &TermGraph, s: &TermGraph, depth: usize) -> bool {
    fn go(t: &TermGraph, tn: NodeId, s: &TermGraph, sn: NodeId, depth: usize) -> bool {
        if depth == 0 {
            return true;
        }
        match (s.node(sn), t.node(tn)) {
            (Node::Hole(_), _) => true,
            (Node::App(f, sk), Node::App(g, tk)) if f == g => {
                sk.iter().zip(tk).all(|(&a, &b)| go(t, b, s, a, depth - 1))
            }
            _ => false,
        }
    }
    go(t, t.root(), s, s.root(), depth)
}

/// A graph whose instance set is `Inst(s) ∩ Inst(t)`, or `None` when that
/// intersection is empty (the two disagree on a symbol at some path).
pub fn meet(s: &TermGraph, t: &TermGraph) -> Option<TermGraph> {
    let mut index: HashMap<(NodeId, NodeId), NodeId> = HashMap::new();
    let mut pairs: Vec<(NodeId, NodeId)> = Vec::new();
    let mut nodes: Vec<Node> = Vec::new();

    let mut intern = |a: NodeId,
                      b: NodeId,
                      pairs: &mut Vec<(NodeId, NodeId)>,
                      nodes: &mut Vec<Node>|
     -> NodeId {
        *index.entry((a, b)).or_insert_with(|| {
            pairs.push((a, b));
            nodes.push(Node::Hole("".into()));
            nodes.len() - 1
        })
    };

    intern(s.root(), t.root(), &mut pairs, &mut nodes);
    let mut next = 0;
    while next < pairs.len() {
        let (a, b) = pairs[next];
        let node = match (s.node(a), t.node(b)) {
            (Node::Hole(name), Node::Hole(_)) => Node::Hole(name.clone()),
            (Node::App(f, kids), Node::Hole(_)) => {
                let kids = kids
                    .iter()
                    .map(|&k| intern(k, b, &mut pairs, &mut nodes))
                    .collect();
                Node::App(f.clone(), kids)
            }
            (Node::Hole(_), Node::App(g, kids)) => {
                let kids = kids
                    .iter()
                    .map(|&k| intern(a, k, &mut pairs, &mut nodes))
                    .collect();
                Node::App(g.clone(), kids)
            }
            (Node::App(f, ak), Node::App(g, bk)) => {
                if f != g {
                    return None;
                }
                let kids = ak
                    .iter()
                    .zip(bk)
                    .map(|(&x, &y)| intern(x, y, &mut pairs, &mut nodes))
                    .collect();
                Node::App(f.clone(), kids)
            }
        };
        nodes[next] = node;
        next += 1;
    }
    Some(TermGraph::from_nodes(nodes, 0).expect("meet preserves arities"))
}
