//! The conflict relation on edges: two edges conflict when they are at
//! distance at most one, i.e. they share an endpoint or some edge of the
//! graph joins an endpoint of one to an endpoint of the other. A strong
//! edge coloring is exactly a proper vertex coloring of this relation.

use std::collections::BTreeSet;

use crate::error::{HalinError, Result};
use crate::graph::{EdgeColoring, HalinGraph};
use crate::tree::PlaneTree;

/// Graph on edge indices; adjacency lists are sorted and deduplicated.
#[derive(Debug, Clone)]
pub struct ConflictGraph {
    pub n: usize,
    adjacency: Vec<Vec<u32>>,
}

impl ConflictGraph {
    pub fn neighbors(&self, e: u32) -> &[u32] {
        &self.adjacency[e as usize]
    }

    pub fn conflicts(&self, e: u32, f: u32) -> bool {
        self.adjacency[e as usize].binary_search(&f).is_ok()
    }

    pub fn degree(&self, e: u32) -> usize {
        self.adjacency[e as usize].len()
    }

    pub fn max_clique_lower_bound_hint(&self) -> usize {
        self.adjacency.iter().map(|a| a.len()).max().unwrap_or(0)
    }

    /// Build from explicit endpoint pairs plus per-vertex incidence lists.
    /// `incidence[v]` holds the indices of all edges touching vertex v.
    pub fn from_incidence(endpoints: &[(usize, usize)], incidence: &[Vec<u32>]) -> ConflictGraph {
        let n = endpoints.len();
        let mut adjacency = vec![Vec::new(); n];
        for (e, &(u, v)) in endpoints.iter().enumerate() {
            let mut set = BTreeSet::new();
            for w in [u, v] {
                for &f in &incidence[w] {
                    set.insert(f);
                }
                // Edges incident to a neighbor of w are at distance one,
                // reached through the connecting edge.
                for &g in &incidence[w] {
                    let (a, b) = endpoints[g as usize];
                    let other = if a == w { b } else { a };
                    for &f in &incidence[other] {
                        set.insert(f);
                    }
                }
            }
            set.remove(&(e as u32));
            adjacency[e] = set.into_iter().collect();
        }
        ConflictGraph { n, adjacency }
    }
}

/// True when edges `e` and `f` are at distance at most one in G.
pub fn edges_conflict(g: &HalinGraph, e: u32, f: u32) -> Result<bool> {
    if e as usize >= g.edge_count() {
        return Err(HalinError::InvalidEdgeIndex(e));
    }
    if f as usize >= g.edge_count() {
        return Err(HalinError::InvalidEdgeIndex(f));
    }
    if e == f {
        return Ok(false);
    }
    let (a, b) = g.edge_vertices(e);
    let (c, d) = g.edge_vertices(f);
    if a == c || a == d || b == c || b == d {
        return Ok(true);
    }
    Ok(g.edge_between(a, c).is_some()
        || g.edge_between(a, d).is_some()
        || g.edge_between(b, c).is_some()
        || g.edge_between(b, d).is_some())
}

/// Materialize the full conflict graph of G. Built from local neighborhoods,
/// not by scanning all pairs.
pub fn build_conflict_graph(g: &HalinGraph) -> ConflictGraph {
    let endpoints: Vec<(usize, usize)> = (0..g.edge_count() as u32).map(|e| g.edge_vertices(e)).collect();
    let mut incidence = vec![Vec::new(); g.vertex_count()];
    for (e, &(u, v)) in endpoints.iter().enumerate() {
        incidence[u].push(e as u32);
        incidence[v].push(e as u32);
    }
    ConflictGraph::from_incidence(&endpoints, &incidence)
}

/// Conflict graph of a bare tree (its edges only, no leaf cycle).
/// Edge indices follow DFS pre-order of the child endpoint, matching the
/// indexing a Halin graph would give the same tree edges.
pub fn build_tree_conflict_graph(tree: &PlaneTree) -> Result<(ConflictGraph, Vec<(u32, u32)>)> {
    if tree.is_empty() {
        return Err(HalinError::MalformedTree("empty node list".into()));
    }
    let mut index_of = std::collections::HashMap::new();
    for (i, n) in tree.nodes.iter().enumerate() {
        if index_of.insert(n.id, i).is_some() {
            return Err(HalinError::MalformedTree(format!("duplicate id {}", n.id)));
        }
    }
    let root = *index_of
        .get(&tree.root)
        .ok_or_else(|| HalinError::MalformedTree(format!("missing root {}", tree.root)))?;

    let mut endpoints = Vec::new();
    let mut pairs = Vec::new();
    let mut incidence = vec![Vec::new(); tree.nodes.len()];
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        let node = &tree.nodes[v];
        for &c in node.children.iter().rev() {
            stack.push(*index_of.get(&c).ok_or(HalinError::UnknownVertex(c))?);
        }
        for &c in &node.children {
            let ci = index_of[&c];
            let e = endpoints.len() as u32;
            endpoints.push((v, ci));
            pairs.push((node.id, c));
            incidence[v].push(e);
            incidence[ci].push(e);
        }
    }
    // Re-order: DFS pre-order of the child endpoint, like HalinGraph.
    // (The loop above already visits parents before children in pre-order,
    // but pushes all children of a node before descending; fix the order.)
    let mut order = Vec::with_capacity(endpoints.len());
    let mut stack2 = vec![root];
    let mut edge_at_child = vec![u32::MAX; tree.nodes.len()];
    for (e, &(_, c)) in endpoints.iter().enumerate() {
        edge_at_child[c] = e as u32;
    }
    while let Some(v) = stack2.pop() {
        if edge_at_child[v] != u32::MAX {
            order.push(edge_at_child[v]);
        }
        for &c in tree.nodes[v].children.iter().rev() {
            stack2.push(index_of[&c]);
        }
    }
    let remap: std::collections::HashMap<u32, u32> =
        order.iter().enumerate().map(|(new, &old)| (old, new as u32)).collect();
    let mut endpoints2 = vec![(0usize, 0usize); endpoints.len()];
    let mut pairs2 = vec![(0u32, 0u32); endpoints.len()];
    for (old, &(u, v)) in endpoints.iter().enumerate() {
        let new = remap[&(old as u32)] as usize;
        endpoints2[new] = (u, v);
        pairs2[new] = pairs[old];
    }
    let mut incidence2 = vec![Vec::new(); tree.nodes.len()];
    for (e, &(u, v)) in endpoints2.iter().enumerate() {
        incidence2[u].push(e as u32);
        incidence2[v].push(e as u32);
    }
    Ok((ConflictGraph::from_incidence(&endpoints2, &incidence2), pairs2))
}

/// Check a complete coloring. Returns whether it is a valid strong edge
/// coloring together with every violating pair of edge indices.
pub fn verify_strong_coloring(
    g: &HalinGraph,
    coloring: &EdgeColoring,
) -> Result<(bool, Vec<(u32, u32)>)> {
    if coloring.len() != g.edge_count() {
        return Err(HalinError::BadArgument(format!(
            "coloring covers {} edges, graph has {}",
            coloring.len(),
            g.edge_count()
        )));
    }
    if let Some(missing) = coloring.first_missing() {
        return Err(HalinError::IncompleteColoring(missing));
    }

    // Two edges are at distance <= 1 exactly when some edge (u, v) sees both
    // among the edges incident to u or v. Checking per-edge color
    // distinctness of that union covers all conflicting pairs without
    // materializing the conflict graph.
    let mut violations = BTreeSet::new();
    let mut local: Vec<(u32, u32)> = Vec::new();
    for e in 0..g.edge_count() as u32 {
        let (u, v) = g.edge_vertices(e);
        local.clear();
        for &(_, f) in g.incident(u) {
            local.push((coloring.get(f).unwrap(), f));
        }
        // Only e itself is incident to both endpoints, so that is the one
        // duplicate to skip.
        for &(_, f) in g.incident(v) {
            if f != e {
                local.push((coloring.get(f).unwrap(), f));
            }
        }
        local.sort_unstable();
        // Everything in `local` is pairwise conflicting (shared endpoint or
        // joined through e), so every same-color pair is a violation.
        let mut i = 0;
        while i < local.len() {
            let mut j = i + 1;
            while j < local.len() && local[j].0 == local[i].0 {
                j += 1;
            }
            for a in i..j {
                for b in (a + 1)..j {
                    let (x, y) = (local[a].1.min(local[b].1), local[a].1.max(local[b].1));
                    violations.insert((x, y));
                }
            }
            i = j;
        }
    }
    let list: Vec<(u32, u32)> = violations.into_iter().collect();
    Ok((list.is_empty(), list))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_necklace, gen_random, gen_wheel};

    /// Naive quadratic reference for the conflict relation.
    fn naive_conflicts(g: &HalinGraph) -> Vec<(u32, u32)> {
        let m = g.edge_count() as u32;
        let mut out = Vec::new();
        for e in 0..m {
            for f in (e + 1)..m {
                if edges_conflict(g, e, f).unwrap() {
                    out.push((e, f));
                }
            }
        }
        out
    }

    #[test]
    fn k4_conflict_graph_is_complete() {
        let g = gen_wheel(3).unwrap();
        let cg = build_conflict_graph(&g);
        assert_eq!(cg.n, 6);
        for e in 0..6u32 {
            assert_eq!(cg.degree(e), 5);
        }
    }

    #[test]
    fn prism_conflict_graph_is_complete() {
        let g = gen_necklace(2).unwrap();
        let cg = build_conflict_graph(&g);
        assert_eq!(cg.n, 9);
        for e in 0..9u32 {
            assert_eq!(cg.degree(e), 8);
        }
    }

    #[test]
    fn builder_matches_pairwise_definition() {
        for seed in 0..5u64 {
            let g = gen_random(seed, 12, seed % 2 == 0).unwrap();
            let cg = build_conflict_graph(&g);
            for (e, f) in naive_conflicts(&g) {
                assert!(cg.conflicts(e, f));
                assert!(cg.conflicts(f, e), "symmetry");
            }
            let total: usize = (0..cg.n as u32).map(|e| cg.degree(e)).sum();
            assert_eq!(total, naive_conflicts(&g).len() * 2);
        }
    }

    #[test]
    fn far_cycle_edges_do_not_conflict() {
        // In a large wheel the hub keeps all cycle edges in conflict, so use
        // a necklace where the cycle is long and sparse.
        let g = gen_necklace(6).unwrap();
        let cg = build_conflict_graph(&g);
        let m = g.edge_count() as u32;
        let non_conflicting = (0..m)
            .flat_map(|e| ((e + 1)..m).map(move |f| (e, f)))
            .filter(|&(e, f)| !cg.conflicts(e, f))
            .count();
        assert!(non_conflicting > 0);
    }

    #[test]
    fn verify_k4_colorings() {
        let g = gen_wheel(3).unwrap();
        let good = EdgeColoring::from_colors(vec![0, 1, 2, 3, 4, 5], 6);
        let (ok, v) = verify_strong_coloring(&g, &good).unwrap();
        assert!(ok && v.is_empty());

        let bad = EdgeColoring::from_colors(vec![0, 1, 2, 3, 4, 0], 6);
        let (ok, v) = verify_strong_coloring(&g, &bad).unwrap();
        assert!(!ok);
        assert_eq!(v, vec![(0, 5)]);

        let incomplete = EdgeColoring::new(6, 6);
        assert_eq!(
            verify_strong_coloring(&g, &incomplete),
            Err(HalinError::IncompleteColoring(0))
        );
    }

    #[test]
    fn verify_matches_naive_on_random_colorings() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for seed in 0..4u64 {
            let g = gen_random(seed, 10, false).unwrap();
            let cg = build_conflict_graph(&g);
            for _ in 0..20 {
                let k = rng.gen_range(3..12u32);
                let colors: Vec<u32> =
                    (0..g.edge_count()).map(|_| rng.gen_range(0..k)).collect();
                let coloring = EdgeColoring::from_colors(colors, k);
                let (ok, violations) = verify_strong_coloring(&g, &coloring).unwrap();
                let mut expected = Vec::new();
                for e in 0..g.edge_count() as u32 {
                    for f in (e + 1)..g.edge_count() as u32 {
                        if cg.conflicts(e, f) && coloring.get(e) == coloring.get(f) {
                            expected.push((e, f));
                        }
                    }
                }
                assert_eq!(violations, expected);
                assert_eq!(ok, expected.is_empty());
            }
        }
    }

    #[test]
    fn removing_an_edge_never_adds_conflicts() {
        // Drop each edge in turn by rebuilding incidence without it; the
        // remaining conflict relation must be a subset of the original.
        let g = gen_random(3, 8, true).unwrap();
        let full = build_conflict_graph(&g);
        let m = g.edge_count();
        let endpoints: Vec<(usize, usize)> = (0..m as u32).map(|e| g.edge_vertices(e)).collect();
        for dropped in 0..m {
            let mut incidence = vec![Vec::new(); g.vertex_count()];
            for (e, &(u, v)) in endpoints.iter().enumerate() {
                if e != dropped {
                    incidence[u].push(e as u32);
                    incidence[v].push(e as u32);
                }
            }
            let reduced = ConflictGraph::from_incidence(&endpoints, &incidence);
            for e in 0..m as u32 {
                if e as usize == dropped {
                    continue;
                }
                for &f in reduced.neighbors(e) {
                    if f as usize == dropped {
                        continue;
                    }
                    assert!(full.conflicts(e, f));
                }
            }
        }
    }
}
