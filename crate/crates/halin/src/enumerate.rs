//! Exhaustive enumeration of plane cubic trees with a given number of
//! leaves, up to rotation and reflection of the embedding. Used by the
//! acceptance tests to compare the dynamic programs against the oracle on
//! every small cubic Halin graph.

use std::collections::BTreeSet;

use crate::tree::{PlaneTree, TreeNode};

/// All plane cubic trees with exactly `leaves` leaves (at least 3), one
/// representative per embedding-symmetry class.
pub fn cubic_plane_trees(leaves: usize) -> Vec<PlaneTree> {
    assert!(leaves >= 3);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    // A cubic tree is an internal root with three ordered binary subtrees.
    for l1 in 1..=(leaves - 2) {
        for l2 in 1..=(leaves - 1 - l1) {
            let l3 = leaves - l1 - l2;
            if l3 < 1 {
                continue;
            }
            for a in binary_shapes(l1) {
                for b in binary_shapes(l2) {
                    for c in binary_shapes(l3) {
                        let tree = assemble(&[a.clone(), b.clone(), c.clone()]);
                        if seen.insert(canonical_form(&tree)) {
                            out.push(tree);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Plane binary trees (every internal vertex has exactly two ordered
/// children) with `leaves` leaves, as nested shapes.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Shape {
    Leaf,
    Fork(Box<Shape>, Box<Shape>),
}

fn binary_shapes(leaves: usize) -> Vec<Shape> {
    if leaves == 1 {
        return vec![Shape::Leaf];
    }
    let mut out = Vec::new();
    for left in 1..leaves {
        for a in binary_shapes(left) {
            for b in binary_shapes(leaves - left) {
                out.push(Shape::Fork(Box::new(a.clone()), Box::new(b)));
            }
        }
    }
    out
}

fn assemble(subtrees: &[Shape]) -> PlaneTree {
    let mut nodes = vec![TreeNode { id: 0, children: vec![] }];
    let mut roots = Vec::new();
    for s in subtrees {
        let id = add_shape(s, &mut nodes);
        roots.push(id);
    }
    nodes[0].children = roots;
    PlaneTree { root: 0, nodes }
}

fn add_shape(s: &Shape, nodes: &mut Vec<TreeNode>) -> u32 {
    let id = nodes.len() as u32;
    nodes.push(TreeNode { id, children: vec![] });
    if let Shape::Fork(a, b) = s {
        let ca = add_shape(a, nodes);
        let cb = add_shape(b, nodes);
        nodes[id as usize].children = vec![ca, cb];
    }
    id
}

/// Canonical string of the unrooted plane tree: minimum over all leaf
/// rootings and both orientations of a bracket encoding. Two trees get the
/// same form exactly when some rotation/reflection of the embedding maps
/// one to the other.
fn canonical_form(tree: &PlaneTree) -> String {
    let n = tree.nodes.len();
    let mut index = std::collections::HashMap::new();
    for (i, node) in tree.nodes.iter().enumerate() {
        index.insert(node.id, i);
    }
    // Cyclic neighbor rings (parent first for non-roots).
    let mut ring: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut parent = vec![usize::MAX; n];
    let root = index[&tree.root];
    for (i, node) in tree.nodes.iter().enumerate() {
        for &c in &node.children {
            parent[index[&c]] = i;
        }
    }
    for (i, node) in tree.nodes.iter().enumerate() {
        if parent[i] != usize::MAX {
            ring[i].push(parent[i]);
        }
        ring[i].extend(node.children.iter().map(|c| index[c]));
    }
    let _ = root;

    fn encode(v: usize, from: usize, ring: &[Vec<usize>], reflect: bool, out: &mut String) {
        let r = &ring[v];
        if r.len() == 1 {
            out.push('L');
            return;
        }
        let at = r.iter().position(|&w| w == from).expect("from is a neighbor");
        out.push('(');
        let k = r.len();
        for d in 1..k {
            let w = if reflect { r[(at + k - d) % k] } else { r[(at + d) % k] };
            encode(w, v, ring, reflect, out);
        }
        out.push(')');
    }

    let mut best: Option<String> = None;
    for v in 0..n {
        if ring[v].len() != 1 {
            continue;
        }
        for reflect in [false, true] {
            let mut s = String::new();
            encode(ring[v][0], v, &ring, reflect, &mut s);
            if best.as_ref().is_none_or(|b| s < *b) {
                best = Some(s);
            }
        }
    }
    best.expect("tree has a leaf")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::HalinGraph;

    #[test]
    fn counts_for_tiny_sizes() {
        assert_eq!(cubic_plane_trees(3).len(), 1);
        assert_eq!(cubic_plane_trees(4).len(), 1);
        assert_eq!(cubic_plane_trees(5).len(), 1);
        // Path spine with same/opposite leaf sides, plus the spider.
        assert_eq!(cubic_plane_trees(6).len(), 3);
    }

    #[test]
    fn every_enumerated_tree_is_a_cubic_instance() {
        for leaves in 3..=7 {
            for t in cubic_plane_trees(leaves) {
                let g = HalinGraph::from_plane_tree(t).unwrap();
                assert!(g.is_cubic());
                assert_eq!(g.leaf_count(), leaves);
            }
        }
    }

    #[test]
    fn enumeration_grows() {
        assert!(cubic_plane_trees(7).len() > cubic_plane_trees(6).len());
        assert!(cubic_plane_trees(8).len() > cubic_plane_trees(7).len());
    }
}
