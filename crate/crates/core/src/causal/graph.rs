use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::model::{CausalModel, ModelBox};
use crate::error::{Error, Result};

/// A vertex of the bipartite box/wire graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Node {
    Box(String),
    Wire(String),
}

impl Node {
    pub fn boxed(name: impl Into<String>) -> Self {
        Node::Box(name.into())
    }

    pub fn wire(name: impl Into<String>) -> Self {
        Node::Wire(name.into())
    }

    /// Resolves a bare name, preferring boxes when a name is both.
    pub fn resolve(m: &CausalModel, name: &str) -> Result<Self> {
        if m.boxes().iter().any(|b| b.name == name) {
            Ok(Node::boxed(name))
        } else if m.has_wire(name) {
            Ok(Node::wire(name))
        } else {
            Err(Error::UnknownNode(name.to_string()))
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Box(b) => write!(f, "box {b}"),
            Node::Wire(w) => write!(f, "wire {w}"),
        }
    }
}

fn check_node(m: &CausalModel, n: &Node) -> Result<()> {
    let known = match n {
        Node::Box(b) => m.boxes().iter().any(|x| &x.name == b),
        Node::Wire(w) => m.has_wire(w),
    };
    if known {
        Ok(())
    } else {
        Err(Error::UnknownNode(n.to_string()))
    }
}

/// Direct successors: a box points to its outputs, a wire to its consumers.
fn successors(m: &CausalModel, n: &Node) -> Vec<Node> {
    match n {
        Node::Box(b) => m
            .boxes()
            .iter()
            .filter(|x| &x.name == b)
            .flat_map(|x| x.outputs.iter().cloned().map(Node::Wire))
            .collect(),
        Node::Wire(w) => {
            m.boxes().iter().filter(|x| x.inputs.contains(w)).map(|x| Node::Box(x.name.clone())).collect()
        }
    }
}

/// Everything reachable from `from`, including itself.
pub fn descendants(m: &CausalModel, from: &Node) -> Result<BTreeSet<Node>> {
    check_node(m, from)?;
    let mut seen = BTreeSet::new();
    let mut stack = vec![from.clone()];
    while let Some(n) = stack.pop() {
        if seen.insert(n.clone()) {
            stack.extend(successors(m, &n));
        }
    }
    Ok(seen)
}

/// Reflexive transitive closure of the wiring relation.
pub fn reaches(m: &CausalModel, a: &Node, b: &Node) -> Result<bool> {
    check_node(m, b)?;
    Ok(descendants(m, a)?.contains(b))
}

/// Wires that box `b` does not reach.
pub fn non_descendants(m: &CausalModel, b: &str) -> Result<BTreeSet<String>> {
    let desc = descendants(m, &Node::boxed(b))?;
    Ok(m.wires().iter().filter(|w| !desc.contains(&Node::Wire((*w).clone()))).cloned().collect())
}

/// Pairs `(b, c)` of boxes with an output of `b` feeding `c`.
pub(crate) fn box_edges(m: &CausalModel) -> Vec<(&ModelBox, &ModelBox)> {
    let mut out = Vec::new();
    for b in m.boxes() {
        for c in super::model::consumers_of(m, b) {
            out.push((b, c));
        }
    }
    out
}
