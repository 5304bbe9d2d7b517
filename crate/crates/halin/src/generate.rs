//! Generators for the graph families used throughout: wheels, double
//! wheels, necklaces, and seeded random instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{HalinError, Result};
use crate::graph::HalinGraph;
use crate::tree::{PlaneTree, TreeNode};

/// Wheel W_n: one hub joined to an n-cycle. The underlying tree is a star.
pub fn gen_wheel(n: u32) -> Result<HalinGraph> {
    if n < 3 {
        return Err(HalinError::BadArgument(format!("wheel needs n >= 3, got {n}")));
    }
    let mut nodes = vec![TreeNode { id: 0, children: (1..=n).collect() }];
    nodes.extend((1..=n).map(|id| TreeNode { id, children: vec![] }));
    HalinGraph::from_plane_tree(PlaneTree { root: 0, nodes })
}

/// Double wheel with hub degrees `dx` and `dy`: two adjacent internal
/// vertices x and y, where x carries dx - 1 leaves and y carries dy - 1.
pub fn gen_double_wheel(dx: u32, dy: u32) -> Result<HalinGraph> {
    if dx < 3 || dy < 3 {
        return Err(HalinError::BadArgument(format!(
            "double wheel needs degrees >= 3, got ({dx}, {dy})"
        )));
    }
    // x = 0 with leaves 1..dx-1, then y = dx with leaves dx+1..dx+dy-1.
    let y = dx;
    let mut x_children: Vec<u32> = (1..dx).collect();
    x_children.push(y);
    let mut nodes = vec![TreeNode { id: 0, children: x_children }];
    nodes.extend((1..dx).map(|id| TreeNode { id, children: vec![] }));
    nodes.push(TreeNode { id: y, children: (y + 1..y + dy).collect() });
    nodes.extend((y + 1..y + dy).map(|id| TreeNode { id, children: vec![] }));
    HalinGraph::from_plane_tree(PlaneTree { root: 0, nodes })
}

/// Necklace Ne_h: a caterpillar spine of h internal vertices; the spine ends
/// carry two leaves each and interior spine vertices carry one. Ne_2 is the
/// prism (the complement of C_6).
pub fn gen_necklace(h: u32) -> Result<HalinGraph> {
    if h < 2 {
        return Err(HalinError::BadArgument(format!("necklace needs h >= 2, got {h}")));
    }
    // Spine ids 0..h, leaf ids h..; children ordered so the leaf cycle runs
    // around the caterpillar without crossings.
    let mut nodes: Vec<TreeNode> = Vec::new();
    let mut next_leaf = h;
    let mut leaf = |nodes: &mut Vec<TreeNode>| {
        let id = next_leaf;
        next_leaf += 1;
        nodes.push(TreeNode { id, children: vec![] });
        id
    };
    let mut spine: Vec<TreeNode> = (0..h).map(|id| TreeNode { id, children: vec![] }).collect();
    for i in 0..h {
        if i == 0 {
            let a = leaf(&mut nodes);
            let b = leaf(&mut nodes);
            spine[0].children = if h == 1 { vec![a, b] } else { vec![a, 1, b] };
        } else if i == h - 1 {
            let a = leaf(&mut nodes);
            let b = leaf(&mut nodes);
            spine[i as usize].children = vec![a, b];
        } else {
            let a = leaf(&mut nodes);
            spine[i as usize].children = vec![a, i + 1];
        }
    }
    let mut all = spine;
    all.extend(nodes);
    HalinGraph::from_plane_tree(PlaneTree { root: 0, nodes: all })
}

/// Seeded random Halin instance with `leaf_target` leaves. Growth repeatedly
/// replaces a random leaf by an internal vertex with two (cubic) or two to
/// four children, so no degree-two vertex can ever appear. Identical
/// arguments produce bit-identical instances.
pub fn gen_random(seed: u64, leaf_target: u32, cubic: bool) -> Result<HalinGraph> {
    if leaf_target < 3 {
        return Err(HalinError::BadArgument(format!(
            "random instance needs at least 3 leaves, got {leaf_target}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // children[v] for every allocated id; id 0 is the root hub.
    let mut children: Vec<Vec<u32>> = vec![vec![1, 2, 3], vec![], vec![], vec![]];
    let mut leaves: Vec<u32> = vec![1, 2, 3];
    let mut leaf_count = 3u32;

    while leaf_count < leaf_target {
        let pick = rng.gen_range(0..leaves.len());
        let v = leaves.swap_remove(pick);
        let max_new = (leaf_target - leaf_count + 1).min(4);
        let fan = if cubic { 2 } else { rng.gen_range(2..=max_new.max(2)) };
        let mut kids = Vec::with_capacity(fan as usize);
        for _ in 0..fan {
            let id = children.len() as u32;
            children.push(vec![]);
            kids.push(id);
            leaves.push(id);
        }
        children[v as usize] = kids;
        leaf_count += fan - 1;
    }

    let nodes = children
        .into_iter()
        .enumerate()
        .map(|(id, ch)| TreeNode { id: id as u32, children: ch })
        .collect();
    HalinGraph::from_plane_tree(PlaneTree { root: 0, nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::serialize_instance;

    #[test]
    fn wheel_shapes() {
        assert_eq!(gen_wheel(3).unwrap().edge_count(), 6);
        let w5 = gen_wheel(5).unwrap();
        assert_eq!(w5.edge_count(), 10);
        assert_eq!(w5.degree(0).unwrap(), 5);
        assert!(gen_wheel(2).is_err());
    }

    #[test]
    fn double_wheel_shapes() {
        let prism = gen_double_wheel(3, 3).unwrap();
        assert_eq!(prism.vertex_count(), 6);
        assert_eq!(prism.edge_count(), 9);

        let dw = gen_double_wheel(3, 5).unwrap();
        assert_eq!(dw.vertex_count(), 8);
        assert_eq!(dw.edge_count(), 13);
        assert_eq!(dw.degree(0).unwrap(), 3);
        assert_eq!(dw.degree(3).unwrap(), 5);

        assert!(gen_double_wheel(2, 5).is_err());
    }

    #[test]
    fn necklace_shapes() {
        let prism = gen_necklace(2).unwrap();
        assert_eq!(prism.edge_count(), 9);
        assert!(prism.is_cubic());

        let ne4 = gen_necklace(4).unwrap();
        assert_eq!(ne4.vertex_count(), 10);
        assert_eq!(ne4.leaf_count(), 6);
        assert!(ne4.is_cubic());

        assert!(gen_necklace(1).is_err());
    }

    #[test]
    fn random_instances_validate_and_are_deterministic() {
        let a = gen_random(7, 50, true).unwrap();
        assert!(a.is_cubic());
        assert_eq!(a.leaf_count(), 50);
        let b = gen_random(7, 50, true).unwrap();
        assert_eq!(serialize_instance(&a), serialize_instance(&b));

        let c = gen_random(7, 50, false).unwrap();
        assert_eq!(c.leaf_count(), 50);
        let d = gen_random(8, 50, false).unwrap();
        assert_ne!(serialize_instance(&c), serialize_instance(&d));

        assert_eq!(gen_random(1, 3, true).unwrap().edge_count(), 6);
        assert!(gen_random(1, 2, true).is_err());
    }
}
