use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use super::Symbol;

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    /// A free variable of the semantic domain.
    Hole(Arc<str>),
    App(Symbol, Vec<NodeId>),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no nodes")]
    Empty,
    #[error("root {0} out of range")]
    BadRoot(NodeId),
    #[error("node {node} has child {child} out of range")]
    BadChild { node: NodeId, child: NodeId },
    #[error("node {node} labeled {symbol} has {found} children")]
    ArityMismatch {
        node: NodeId,
        symbol: Symbol,
        found: usize,
    },
}

/// A finite rooted graph denoting a rational tree.
///
/// Every node is reachable from the root, and labeled nodes carry exactly
/// arity-many children. Graphs are immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TermGraph {
    nodes: Vec<Node>,
    root: NodeId,
}

impl TermGraph {
    /// Validates `nodes` and drops everything unreachable from `root`.
    pub fn from_nodes(nodes: Vec<Node>, root: NodeId) -> Result<Self, GraphError> {
        if nodes.is_empty() {
            return Err(GraphError::Empty);
        }
        if root >= nodes.len() {
            return Err(GraphError::BadRoot(root));
        }
        for (id, node) in nodes.iter().enumerate() {
            if let Node::App(sym, children) = node {
                if children.len() != sym.arity() {
                    return Err(GraphError::ArityMismatch {
                        node: id,
                        symbol: sym.clone(),
                        found: children.len(),
                    });
                }
                if let Some(&bad) = children.iter().find(|&&c| c >= nodes.len()) {
                    return Err(GraphError::BadChild {
                        node: id,
                        child: bad,
                    });
                }
            }
        }
        Ok(compact(&nodes, root))
    }

    pub fn hole(name: impl AsRef<str>) -> Self {
        TermGraph {
            nodes: vec![Node::Hole(Arc::from(name.as_ref()))],
            root: 0,
        }
    }

    /// `sym(children...)`; panics if the number of children is not the arity.
    pub fn app(sym: Symbol, children: Vec<TermGraph>) -> Self {
        assert_eq!(sym.arity(), children.len(), "arity mismatch for {sym}");
        let mut nodes = vec![Node::App(sym, Vec::new())];
        let mut kids = Vec::with_capacity(children.len());
        for child in children {
            let offset = nodes.len();
            kids.push(offset + child.root);
            nodes.extend(child.nodes.into_iter().map(|n| shift(n, offset)));
        }
        if let Node::App(_, ref mut slot) = nodes[0] {
            *slot = kids;
        }
        TermGraph { nodes, root: 0 }
    }

    /// `rec X. sym(...)`: a single labeled node whose children are given as
    /// either the node itself (`None`) or a separate graph.
    pub fn cyclic(sym: Symbol, children: Vec<Option<TermGraph>>) -> Self {
        assert_eq!(sym.arity(), children.len(), "arity mismatch for {sym}");
        let mut nodes = vec![Node::App(sym, Vec::new())];
        let mut kids = Vec::with_capacity(children.len());
        for child in children {
            match child {
                None => kids.push(0),
                Some(child) => {
                    let offset = nodes.len();
                    kids.push(offset + child.root);
                    nodes.extend(child.nodes.into_iter().map(|n| shift(n, offset)));
                }
            }
        }
        if let Node::App(_, ref mut slot) = nodes[0] {
            *slot = kids;
        }
        TermGraph { nodes, root: 0 }
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Label of the root, `None` for a hole.
    pub fn root_symbol(&self) -> Option<&Symbol> {
        match &self.nodes[self.root] {
            Node::App(sym, _) => Some(sym),
            Node::Hole(_) => None,
        }
    }

    /// The graph re-rooted at `id`.
    pub fn subgraph(&self, id: NodeId) -> TermGraph {
        compact(&self.nodes, id)
    }

    /// Subgraphs at the root's children; empty for a hole.
    pub fn children(&self) -> Vec<TermGraph> {
        match &self.nodes[self.root] {
            Node::App(_, kids) => kids.iter().map(|&k| self.subgraph(k)).collect(),
            Node::Hole(_) => Vec::new(),
        }
    }

    pub fn hole_names(&self) -> BTreeSet<Arc<str>> {
        self.nodes
            .iter()
            .filter_map(|n| match n {
                Node::Hole(name) => Some(name.clone()),
                Node::App(..) => None,
            })
            .collect()
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.nodes
            .iter()
            .filter_map(|n| match n {
                Node::App(sym, _) => Some(sym.clone()),
                Node::Hole(_) => None,
            })
            .collect()
    }

    pub fn is_cyclic(&self) -> bool {
        // Kahn-style check on the child relation.
        let mut indegree = vec![0usize; self.nodes.len()];
        for node in &self.nodes {
            if let Node::App(_, kids) = node {
                for &k in kids {
                    indegree[k] += 1;
                }
            }
        }
        let mut ready: Vec<NodeId> = (0..self.nodes.len())
            .filter(|&i| indegree[i] == 0)
            .collect();
        let mut seen = 0;
        while let Some(id) = ready.pop() {
            seen += 1;
            if let Node::App(_, kids) = &self.nodes[id] {
                for &k in kids {
                    indegree[k] -= 1;
                    if indegree[k] == 0 {
                        ready.push(k);
                    }
                }
            }
        }
        seen != self.nodes.len()
    }
}

fn shift(node: Node, offset: usize) -> Node {
    match node {
        Node::App(sym, kids) => Node::App(sym, kids.into_iter().map(|k| k + offset).collect()),
        hole => hole,
    }
}

/// Keeps the nodes reachable from `root`, renumbered in DFS preorder.
fn compact(nodes: &[Node], root: NodeId) -> TermGraph {
    let mut remap = vec![usize::MAX; nodes.len()];
    let mut order = Vec::new();
    let mut stack = vec![root];
    while let Some(id) = stack.pop() {
        if remap[id] != usize::MAX {
            continue;
        }
        remap[id] = order.len();
        order.push(id);
        if let Node::App(_, kids) = &nodes[id] {
            stack.extend(kids.iter().rev().copied());
        }
    }
    let nodes = order
        .iter()
        .map(|&old| match &nodes[old] {
            Node::App(sym, kids) => {
                Node::App(sym.clone(), kids.iter().map(|&k| remap[k]).collect())
            }
            hole => hole.clone(),
        })
        .collect();
    TermGraph { nodes, root: 0 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_nodes_rejects_arity_mismatch() {
        let f = Symbol::new("f", 2);
        let err = TermGraph::from_nodes(vec![Node::App(f, vec![])], 0).unwrap_err();
        assert!(matches!(err, GraphError::ArityMismatch { found: 0, .. }));
    }

    #[test]
    fn from_nodes_drops_unreachable() {
        let a = Symbol::new("a", 0);
        let g =
            TermGraph::from_nodes(vec![Node::Hole("x".into()), Node::App(a, vec![])], 1).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.root_symbol().map(Symbol::name), Some("a"));
    }

    #[test]
    fn cyclic_graph_detected() {
        let f = Symbol::new("f", 1);
        let g = TermGraph::cyclic(f.clone(), vec![None]);
        assert!(g.is_cyclic());
        let t = TermGraph::app(f, vec![TermGraph::hole("x")]);
        assert!(!t.is_cyclic());
    }
}
