//! Textual syntax for term graphs.
//!
//! ```text
//! term  ::= ident                       hole, or back-reference to a binder
//!         | ident "(" [term ("," term)*] ")"
//!         | "rec" ident "." term
//! ident ::= [A-Za-z_][A-Za-z0-9_']*
//! ```
//!
//! Constructors always carry parentheses (`a()` is a constant, `a` is a
//! hole). Inside `rec X. body`, the identifier `X` refers back to the node
//! denoted by `body`. The printer emits a binder only where the unfolding
//! actually revisits a node, so acyclic graphs print as plain terms.

use std::cell::Cell;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::graph::{Node, NodeId, TermGraph};
use super::{is_ident_char, is_ident_start, Symbol};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("term syntax error at offset {offset}: {message}")]
pub struct TermSyntaxError {
    pub offset: usize,
    pub message: String,
}

pub fn parse_term(src: &str) -> Result<TermGraph, TermSyntaxError> {
    let mut p = Parser {
        src,
        pos: 0,
        nodes: Vec::new(),
        binders: Vec::new(),
    };
    let root = p.term()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.error("trailing input"));
    }
    TermGraph::from_nodes(p.nodes, root).map_err(|e| TermSyntaxError {
        offset: 0,
        message: e.to_string(),
    })
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    nodes: Vec<Node>,
    binders: Vec<(String, NodeId)>,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> TermSyntaxError {
        TermSyntaxError {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String, TermSyntaxError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if is_ident_start(c) => self.pos += 1,
            _ => return Err(self.error("expected identifier")),
        }
        while let Some(c) = self.peek() {
            if !is_ident_char(c) {
                break;
            }
            self.pos += 1;
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn term(&mut self) -> Result<NodeId, TermSyntaxError> {
        let name = self.ident()?;
        if name == "rec" {
            let var = self.ident()?;
            if !self.eat('.') {
                return Err(self.error("expected '.' after rec binder"));
            }
            let placeholder = self.nodes.len();
            self.nodes.push(Node::Hole(Arc::from("")));
            self.binders.push((var, placeholder));
            let body = self.term()?;
            self.binders.pop();
            if body == placeholder {
                return Err(self.error("unguarded recursion"));
            }
            for node in &mut self.nodes {
                if let Node::App(_, kids) = node {
                    for k in kids.iter_mut().filter(|k| **k == placeholder) {
                        *k = body;
                    }
                }
            }
            return Ok(body);
        }
        if self.eat('(') {
            let mut kids = Vec::new();
            if !self.eat(')') {
                loop {
                    kids.push(self.term()?);
                    if self.eat(')') {
                        break;
                    }
                    if !self.eat(',') {
                        return Err(self.error("expected ',' or ')'"));
                    }
                }
            }
            self.nodes
                .push(Node::App(Symbol::new(&name, kids.len()), kids));
            return Ok(self.nodes.len() - 1);
        }
        if let Some(&(_, id)) = self.binders.iter().rev().find(|(b, _)| *b == name) {
            return Ok(id);
        }
        self.nodes.push(Node::Hole(Arc::from(name.as_str())));
        Ok(self.nodes.len() - 1)
    }
}

impl fmt::Display for TermGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let holes = self.hole_names();
        let mut printer = Printer {
            graph: self,
            holes: &holes,
            stack: Vec::new(),
            counter: 0,
        };
        let text = printer.print(self.root());
        f.write_str(&text)
    }
}

struct Printer<'a> {
    graph: &'a TermGraph,
    holes: &'a BTreeSet<Arc<str>>,
    stack: Vec<(NodeId, String, Cell<bool>)>,
    counter: usize,
}

impl Printer<'_> {
    fn fresh_binder(&mut self) -> String {
        loop {
            let name = if self.counter == 0 {
                "X".to_string()
            } else {
                format!("X{}", self.counter)
            };
            self.counter += 1;
            if !self.holes.contains(name.as_str()) {
                return name;
            }
        }
    }

    fn print(&mut self, id: NodeId) -> String {
        if let Some((_, name, used)) = self.stack.iter().find(|(n, _, _)| *n == id) {
            used.set(true);
            return name.clone();
        }
        match self.graph.node(id) {
            Node::Hole(name) => name.to_string(),
            Node::App(sym, kids) => {
                let binder = self.fresh_binder();
                self.stack.push((id, binder, Cell::new(false)));
                let args: Vec<String> = kids.iter().map(|&k| self.print(k)).collect();
                let (_, binder, used) = self.stack.pop().expect("pushed above");
                let body = format!("{}({})", sym.name(), args.join(", "));
                if used.get() {
                    format!("rec {binder}. {body}")
                } else {
                    body
                }
            }
        }
    }
}
