//! Plane trees: rooted trees whose child order encodes the embedding.

use serde::{Deserialize, Serialize};

use crate::error::{HalinError, Result};

/// One node of a plane tree. `children` order is significant: it is the
/// counterclockwise order in which subtrees are embedded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNode {
    pub id: u32,
    pub children: Vec<u32>,
}

/// A rooted plane tree without degree-two vertices.
///
/// The tree degree of the root is its child count; for every other vertex it
/// is the child count plus one (the parent edge). Leaves are the vertices of
/// tree degree one, so a root with a single child is itself a leaf of the
/// underlying unrooted tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneTree {
    pub root: u32,
    pub nodes: Vec<TreeNode>,
}

impl PlaneTree {
    /// Look up a node record by id.
    pub fn node(&self, id: u32) -> Option<&TreeNode> {
        self.nodes.iter().find(|n| n.id == id)
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Tree degree of a vertex (children plus parent edge, if any).
    pub fn tree_degree(&self, id: u32) -> Result<u32> {
        let node = self.node(id).ok_or(HalinError::UnknownVertex(id))?;
        let parent_edges = if id == self.root { 0 } else { 1 };
        Ok(node.children.len() as u32 + parent_edges)
    }

    /// Ids of all leaves (tree degree one) in DFS pre-order. This is the
    /// cycle order of the Halin graph built on this tree.
    pub fn leaves_preorder(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut stack = vec![self.root];
        // Pre-order with explicit stack; children pushed right-to-left.
        while let Some(id) = stack.pop() {
            if let Some(node) = self.node(id) {
                let deg = node.children.len() + usize::from(id != self.root);
                if deg == 1 {
                    out.push(id);
                }
                for &c in node.children.iter().rev() {
                    stack.push(c);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star3() -> PlaneTree {
        PlaneTree {
            root: 0,
            nodes: vec![
                TreeNode { id: 0, children: vec![1, 2, 3] },
                TreeNode { id: 1, children: vec![] },
                TreeNode { id: 2, children: vec![] },
                TreeNode { id: 3, children: vec![] },
            ],
        }
    }

    #[test]
    fn degrees_and_leaves() {
        let t = star3();
        assert_eq!(t.tree_degree(0).unwrap(), 3);
        assert_eq!(t.tree_degree(2).unwrap(), 1);
        assert_eq!(t.leaves_preorder(), vec![1, 2, 3]);
        assert_eq!(t.tree_degree(9), Err(HalinError::UnknownVertex(9)));
    }

    #[test]
    fn leaf_root_counts_as_leaf() {
        let t = PlaneTree {
            root: 7,
            nodes: vec![
                TreeNode { id: 7, children: vec![0] },
                TreeNode { id: 0, children: vec![1, 2, 3] },
                TreeNode { id: 1, children: vec![] },
                TreeNode { id: 2, children: vec![] },
                TreeNode { id: 3, children: vec![] },
            ],
        };
        assert_eq!(t.tree_degree(7).unwrap(), 1);
        assert_eq!(t.leaves_preorder(), vec![7, 1, 2, 3]);
    }
}
