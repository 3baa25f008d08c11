//! Continuous extension from a dense open set.
//!
//! A function given on every cell of its tree (including every ramp subcell)
//! is known on `K` minus the ramps' branch points, an open dense set. It
//! extends uniquely to a continuous function on `K`; the value at each branch
//! point is the limit of the ramp's value sequence.

use crate::error::{Error, Result};
use crate::extreal::ExtReal;
use crate::stone::{Cell, OpenDense};

use super::seq::Seq;
use super::tree::{Leaf, Node, TreeFn};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartialNode {
    Const(ExtReal),
    /// Subcell values are given; the branch value may be missing.
    Ramp {
        dir: bool,
        seq: Seq,
        branch: Option<ExtReal>,
    },
    Split(Box<PartialNode>, Box<PartialNode>),
}

/// A function known on an open dense subset of `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFn {
    root: PartialNode,
}

impl PartialFn {
    pub fn new(root: PartialNode) -> Self {
        PartialFn { root }
    }

    /// Forgets every branch value of `u`.
    pub fn forget_branches(u: &TreeFn) -> Self {
        fn go(n: &Node) -> PartialNode {
            match n {
                Node::Leaf(Leaf::Const(v)) => PartialNode::Const(v.clone()),
                Node::Leaf(Leaf::Ramp(r)) => PartialNode::Ramp { dir: r.dir(), seq: r.seq().clone(), branch: None },
                Node::Split(a, b) => PartialNode::Split(Box::new(go(a)), Box::new(go(b))),
            }
        }
        PartialFn { root: go(u.root()) }
    }

    pub fn root(&self) -> &PartialNode {
        &self.root
    }

    /// The open dense set on which the function is known.
    pub fn domain(&self) -> OpenDense {
        fn go(n: &PartialNode, cell: Cell, out: &mut Vec<crate::stone::BranchPoint>) {
            match n {
                PartialNode::Const(_) => {}
                PartialNode::Ramp { dir, branch: None, .. } => out.push(cell.branch(*dir)),
                PartialNode::Ramp { .. } => {}
                PartialNode::Split(a, b) => {
                    go(a, cell.child(false), out);
                    go(b, cell.child(true), out);
                }
            }
        }
        let mut out = Vec::new();
        go(&self.root, Cell::root(), &mut out);
        OpenDense::new(out)
    }
}

/// Fills every missing branch value with the limit of its ramp sequence.
/// Supplied branch values must already agree with that limit.
pub fn extend_from_dense(partial: &PartialFn) -> Result<TreeFn> {
    fn go(n: &PartialNode, cell: Cell) -> Result<Node> {
        Ok(match n {
            PartialNode::Const(v) => Node::constant(v.clone()),
            PartialNode::Ramp { dir, seq, branch } => {
                if let Some(b) = branch {
                    if *b != seq.limit() {
                        return Err(Error::Discontinuous(cell.branch(*dir)));
                    }
                }
                Node::ramp(*dir, seq.clone())
            }
            PartialNode::Split(a, b) => Node::split(go(a, cell.child(false))?, go(b, cell.child(true))?),
        })
    }
    go(&partial.root, Cell::root()).map(TreeFn::from_node)
}
