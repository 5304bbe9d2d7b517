//! Tree-structured dynamic programming shared machinery: re-rooting the
//! plane tree at a leaf, leaf arcs of subtrees, and canonical color-equality
//! partitions (the permutation-invariant DP state).

pub mod cubic;
pub mod general;

use crate::error::{HalinError, Result};
use crate::graph::HalinGraph;

/// Counters reported by the dynamic programs; the scaling benchmark asserts
/// these stay flat as instances grow.
#[derive(Debug, Clone, Copy, Default)]
pub struct DpStats {
    /// Largest number of feasible patterns stored at any single scope.
    pub max_table: usize,
    /// Largest number of joint states enumerated in any single merge.
    pub max_joint: usize,
    /// Number of merges performed.
    pub merges: usize,
}

impl DpStats {
    pub(crate) fn absorb(&mut self, other: DpStats) {
        self.max_table = self.max_table.max(other.max_table);
        self.max_joint = self.max_joint.max(other.max_joint);
        self.merges += other.merges;
    }
}

/// The tree re-rooted at a leaf `r`, with the leaf cycle rotated so `r`
/// sits at position 0. Subtree leaf arcs are contiguous runs of positions
/// 1..m, which is what makes boundary separators work.
#[derive(Debug)]
pub(crate) struct Rooted {
    pub root: usize,
    pub parent: Vec<usize>,
    pub children: Vec<Vec<usize>>,
    /// Every vertex except the root, children before parents.
    pub postorder: Vec<usize>,
    pub rot_cycle: Vec<usize>,
    pub cycle_pos: Vec<usize>,
    /// Inclusive positions in `rot_cycle` of each vertex's subtree leaves.
    pub arc: Vec<(usize, usize)>,
}

const NONE: usize = usize::MAX;

impl Rooted {
    /// Re-root at the leaf with the smallest external id. Rotating each
    /// vertex's neighbor list around its new parent preserves the embedding,
    /// so subtree arcs stay contiguous.
    pub fn build(g: &HalinGraph) -> Rooted {
        let n = g.vertex_count();
        let leaves = g.cycle_order_indices();
        let &r = leaves
            .iter()
            .min_by_key(|&&v| g.id_of(v))
            .expect("validated instance has leaves");

        // Cyclic neighbor order: original parent first, then children.
        let mut ring: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            if let Some(p) = g.parent_of(v) {
                ring[v].push(p);
            }
            ring[v].extend_from_slice(g.children_of(v));
        }

        let mut parent = vec![NONE; n];
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut stack = vec![r];
        let mut seen = vec![false; n];
        seen[r] = true;
        let mut preorder = Vec::with_capacity(n);
        while let Some(v) = stack.pop() {
            preorder.push(v);
            let ring_v = &ring[v];
            let kids: Vec<usize> = if parent[v] == NONE {
                ring_v.clone()
            } else {
                let at = ring_v.iter().position(|&w| w == parent[v]).expect("parent adjacent");
                (1..ring_v.len()).map(|d| ring_v[(at + d) % ring_v.len()]).collect()
            };
            for &c in kids.iter().rev() {
                debug_assert!(!seen[c]);
                seen[c] = true;
                parent[c] = v;
                stack.push(c);
            }
            children[v] = kids;
        }

        // The rotated cycle starts at r; the re-rooted DFS must list the
        // remaining leaves in exactly this order.
        let pos_r = leaves.iter().position(|&v| v == r).unwrap();
        let m = leaves.len();
        let rot_cycle: Vec<usize> = (0..m).map(|i| leaves[(pos_r + i) % m]).collect();
        let mut cycle_pos = vec![NONE; n];
        for (i, &v) in rot_cycle.iter().enumerate() {
            cycle_pos[v] = i;
        }
        debug_assert_eq!(
            preorder.iter().filter(|&&v| children[v].is_empty()).copied().collect::<Vec<_>>(),
            rot_cycle[1..].to_vec(),
            "embedding order must survive re-rooting"
        );

        // Reversed pre-order lists every child before its parent, which is
        // the only ordering the bottom-up pass needs.
        let postorder: Vec<usize> = preorder.iter().rev().copied().filter(|&v| v != r).collect();

        let mut arc = vec![(NONE, NONE); n];
        for &v in &postorder {
            if children[v].is_empty() {
                let p = cycle_pos[v];
                arc[v] = (p, p);
            } else {
                let first = arc[children[v][0]].0;
                let last = arc[*children[v].last().unwrap()].1;
                debug_assert!(children[v].windows(2).all(|w| arc[w[0]].1 + 1 == arc[w[1]].0));
                arc[v] = (first, last);
            }
        }

        Rooted { root: r, parent, children, postorder, rot_cycle, cycle_pos, arc }
    }

    /// The cycle edge joining consecutive rotated positions i and i+1.
    pub fn cycle_edge(&self, g: &HalinGraph, i: usize) -> u32 {
        let m = self.rot_cycle.len();
        let a = self.rot_cycle[i % m];
        let b = self.rot_cycle[(i + 1) % m];
        g.edge_between(a, b).expect("consecutive cycle vertices are adjacent")
    }

    /// The tree edge from a non-root vertex to its parent.
    pub fn parent_edge(&self, g: &HalinGraph, v: usize) -> u32 {
        g.edge_between(v, self.parent[v]).expect("parent is adjacent")
    }
}

/// Check the cubic precondition, naming the first offending vertex.
pub(crate) fn require_cubic(g: &HalinGraph) -> Result<()> {
    for v in 0..g.vertex_count() {
        let id = g.id_of(v);
        let deg = g.tree_degree(id)?;
        if deg != 1 && deg != 3 {
            return Err(HalinError::NotCubic { id, degree: deg });
        }
    }
    Ok(())
}

/// Canonicalize class labels to a restricted-growth string: scanning the
/// slice, the first occurrence of each class yields 0, 1, 2, ... in order.
/// Returns the packed form (4 bits per digit, first digit in the highest
/// used nibble so numeric order equals lexicographic order) and the class
/// count.
pub(crate) fn canon_rgs(labels: &[u8]) -> (u64, u8) {
    debug_assert!(labels.len() <= 16);
    let mut map = [u8::MAX; 64];
    let mut next = 0u8;
    let mut packed = 0u64;
    let len = labels.len();
    for (i, &l) in labels.iter().enumerate() {
        let d = if map[l as usize] == u8::MAX {
            map[l as usize] = next;
            next += 1;
            next - 1
        } else {
            map[l as usize]
        };
        packed |= (d as u64) << ((len - 1 - i) * 4);
    }
    (packed, next)
}

/// Read digit `i` of a packed RGS of length `len`.
pub(crate) fn rgs_digit(packed: u64, len: usize, i: usize) -> u8 {
    ((packed >> ((len - 1 - i) * 4)) & 0xF) as u8
}

/// Conflict bitmasks over a small edge universe: bit j of row i says that
/// universe edges i and j are at distance at most one.
pub(crate) fn local_conflicts(g: &HalinGraph, universe: &[u32]) -> Vec<u32> {
    let n = universe.len();
    debug_assert!(n <= 32);
    let mut rows = vec![0u32; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if crate::conflict::edges_conflict(g, universe[i], universe[j]).expect("valid edges") {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_necklace, gen_random, gen_wheel};

    #[test]
    fn rerooting_keeps_embedding_order() {
        for g in [gen_wheel(7).unwrap(), gen_necklace(5).unwrap(), gen_random(3, 20, true).unwrap(), gen_random(4, 17, false).unwrap()]
        {
            let r = Rooted::build(&g);
            assert_eq!(r.rot_cycle.len(), g.leaf_count());
            assert_eq!(r.rot_cycle[0], r.root);
            // Arcs of internal vertices are contiguous and cover children.
            for &v in &r.postorder {
                let (s, t) = r.arc[v];
                assert!(s <= t && s >= 1);
            }
        }
    }

    #[test]
    fn canonical_rgs_is_permutation_invariant() {
        let a = canon_rgs(&[4, 4, 7, 4, 1]);
        let b = canon_rgs(&[0, 0, 2, 0, 9]);
        assert_eq!(a, b);
        assert_eq!(a.1, 3);
        assert_eq!(rgs_digit(a.0, 5, 0), 0);
        assert_eq!(rgs_digit(a.0, 5, 2), 1);
        assert_eq!(rgs_digit(a.0, 5, 4), 2);
    }
}
