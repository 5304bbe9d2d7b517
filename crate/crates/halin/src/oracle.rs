//! Independent exact solver: branch-and-bound vertex coloring of the
//! conflict graph, with DSATUR ordering and clique seeding. This is the
//! ground truth the dynamic programs are tested against; it is meant for
//! desk-scale instances only and reports a budget error instead of hanging.

use crate::conflict::{build_conflict_graph, build_tree_conflict_graph, ConflictGraph};
use crate::error::{HalinError, Result};
use crate::graph::{EdgeColoring, HalinGraph};
use crate::tree::PlaneTree;

/// Exact result: chromatic number of the conflict graph, an optimal
/// coloring, and how many search nodes the proof took.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub value: u32,
    pub witness: EdgeColoring,
    pub nodes_explored: u64,
}

/// Search configuration. `max_edges` rejects instances whose conflict graph
/// would be too large to even start on.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub node_budget: u64,
    pub max_edges: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { node_budget: 50_000_000, max_edges: 64 }
    }
}

impl Oracle {
    pub fn with_budget(budget: u64) -> Self {
        Oracle { node_budget: budget, ..Oracle::default() }
    }

    /// Exact strong chromatic index of a Halin graph.
    pub fn sei_exact(&self, g: &HalinGraph) -> Result<OracleResult> {
        if g.edge_count() > self.max_edges {
            return Err(HalinError::BudgetExceeded(0));
        }
        let cg = build_conflict_graph(g);
        let (value, colors, nodes) = self.chromatic_number(&cg)?;
        let witness = EdgeColoring::from_colors(colors, value.max(1)).normalized();
        Ok(OracleResult { value, witness, nodes_explored: nodes })
    }

    /// Exact strong chromatic index of a bare tree.
    pub fn tree_sei_exact(&self, tree: &PlaneTree) -> Result<OracleResult> {
        let (cg, _) = build_tree_conflict_graph(tree)?;
        if cg.n > self.max_edges {
            return Err(HalinError::BudgetExceeded(0));
        }
        let (value, colors, nodes) = self.chromatic_number(&cg)?;
        let witness = EdgeColoring::from_colors(colors, value.max(1)).normalized();
        Ok(OracleResult { value, witness, nodes_explored: nodes })
    }

    /// Chromatic number of an arbitrary conflict graph with at most 64
    /// vertices, with one optimal coloring.
    pub fn chromatic_number(&self, cg: &ConflictGraph) -> Result<(u32, Vec<u32>, u64)> {
        assert!(cg.n <= 64, "oracle is limited to 64 conflict vertices");
        if cg.n == 0 {
            return Ok((0, vec![], 0));
        }
        let adj = bit_adjacency(cg);
        let clique = greedy_clique(&adj);
        let (ub, greedy_colors) = dsatur_greedy(&adj);

        let mut best_colors = greedy_colors;
        let mut best = ub;
        let lb = clique.len() as u32;
        let mut nodes = 0u64;

        if lb < best {
            let mut state = Search {
                adj: &adj,
                colors: vec![u32::MAX; cg.n],
                neighbor_colors: vec![0u64; cg.n],
                budget: self.node_budget,
                nodes: &mut nodes,
                best: &mut best,
                best_colors: &mut best_colors,
            };
            // Seed: the clique must be rainbow, so fix its colors up front.
            for (c, &v) in clique.iter().enumerate() {
                state.assign(v as usize, c as u32);
            }
            state.run(clique.len(), lb)?;
        }
        Ok((best, best_colors, nodes))
    }
}

/// Size of some clique (greedy, deterministic): a valid lower bound on the
/// chromatic number of the conflict graph.
pub fn clique_lower_bound(cg: &ConflictGraph) -> u32 {
    if cg.n == 0 {
        return 0;
    }
    assert!(cg.n <= 64, "oracle is limited to 64 conflict vertices");
    greedy_clique(&bit_adjacency(cg)).len() as u32
}

/// Exact strong chromatic index with the default budget.
pub fn sei_exact(g: &HalinGraph) -> Result<OracleResult> {
    Oracle::default().sei_exact(g)
}

/// Exact tree strong chromatic index with the default budget.
pub fn tree_sei_exact(tree: &PlaneTree) -> Result<OracleResult> {
    Oracle::default().tree_sei_exact(tree)
}

fn bit_adjacency(cg: &ConflictGraph) -> Vec<u64> {
    let mut adj = vec![0u64; cg.n];
    for v in 0..cg.n as u32 {
        for &w in cg.neighbors(v) {
            adj[v as usize] |= 1u64 << w;
        }
    }
    adj
}

/// Grow a clique greedily from every start vertex; keep the largest.
/// Ties break toward the smallest index so results are reproducible.
fn greedy_clique(adj: &[u64]) -> Vec<u32> {
    let n = adj.len();
    let mut best: Vec<u32> = Vec::new();
    for start in 0..n {
        let mut clique = vec![start as u32];
        let mut cand = adj[start];
        while cand != 0 {
            let mut pick = None;
            let mut pick_score = 0u32;
            let mut bits = cand;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let score = (adj[v] & cand).count_ones();
                if pick.is_none() || score > pick_score {
                    pick = Some(v);
                    pick_score = score;
                }
            }
            let v = pick.unwrap();
            clique.push(v as u32);
            cand &= adj[v];
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

/// Greedy DSATUR coloring: an upper bound plus a complete coloring.
fn dsatur_greedy(adj: &[u64]) -> (u32, Vec<u32>) {
    let n = adj.len();
    let mut colors = vec![u32::MAX; n];
    let mut neighbor_colors = vec![0u64; n];
    let mut used = 0u32;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v] == u32::MAX)
            .max_by_key(|&v| (neighbor_colors[v].count_ones(), adj[v].count_ones(), usize::MAX - v))
            .unwrap();
        let c = (!neighbor_colors[v]).trailing_zeros();
        colors[v] = c;
        used = used.max(c + 1);
        let mut bits = adj[v];
        while bits != 0 {
            let w = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            neighbor_colors[w] |= 1u64 << c;
        }
    }
    (used, colors)
}

struct Search<'a> {
    adj: &'a [u64],
    colors: Vec<u32>,
    neighbor_colors: Vec<u64>,
    budget: u64,
    nodes: &'a mut u64,
    best: &'a mut u32,
    best_colors: &'a mut Vec<u32>,
}

impl Search<'_> {
    fn assign(&mut self, v: usize, c: u32) {
        self.colors[v] = c;
        let mut bits = self.adj[v];
        while bits != 0 {
            let w = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            self.neighbor_colors[w] |= 1u64 << c;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.colors[v];
        self.colors[v] = u32::MAX;
        let mut bits = self.adj[v];
        while bits != 0 {
            let w = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            // Recompute: another neighbor may still use the color.
            let mut still = false;
            let mut nb = self.adj[w];
            while nb != 0 {
                let u = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if self.colors[u] == c {
                    still = true;
                    break;
                }
            }
            if !still {
                self.neighbor_colors[w] &= !(1u64 << c);
            }
        }
    }

    fn run(&mut self, colored: usize, used: u32) -> Result<()> {
        *self.nodes += 1;
        if *self.nodes > self.budget {
            return Err(HalinError::BudgetExceeded(*self.nodes));
        }
        if used >= *self.best {
            return Ok(());
        }
        if colored == self.colors.len() {
            *self.best = used;
            *self.best_colors = self.colors.clone();
            return Ok(());
        }
        // DSATUR: most saturated uncolored vertex, then highest degree,
        // then lowest index.
        let v = (0..self.colors.len())
            .filter(|&v| self.colors[v] == u32::MAX)
            .max_by_key(|&v| {
                (self.neighbor_colors[v].count_ones(), self.adj[v].count_ones(), usize::MAX - v)
            })
            .unwrap();
        // Existing colors plus at most one fresh color; color classes are
        // interchangeable, so this loses no solutions.
        let mut c = 0;
        while c <= used {
            let new_used = used.max(c + 1);
            if new_used >= *self.best {
                break;
            }
            if self.neighbor_colors[v] & (1u64 << c) == 0 {
                self.assign(v, c);
                self.run(colored + 1, new_used)?;
                self.unassign(v);
            }
            c += 1;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conflict::verify_strong_coloring;
    use crate::generate::{gen_double_wheel, gen_necklace, gen_random, gen_wheel};
    use crate::tree::{PlaneTree, TreeNode};

    #[test]
    fn clique_bounds() {
        let k4 = build_conflict_graph(&gen_wheel(3).unwrap());
        assert_eq!(clique_lower_bound(&k4), 6);
        let w5 = build_conflict_graph(&gen_wheel(5).unwrap());
        assert_eq!(clique_lower_bound(&w5), 10);
        let empty = ConflictGraph::from_incidence(&[(0, 1), (2, 3)], &{
            let mut inc = vec![Vec::new(); 4];
            inc[0].push(0);
            inc[1].push(0);
            inc[2].push(1);
            inc[3].push(1);
            inc
        });
        assert_eq!(clique_lower_bound(&empty), 1);
    }

    #[test]
    fn exact_values_on_named_instances() {
        assert_eq!(sei_exact(&gen_necklace(2).unwrap()).unwrap().value, 9);
        assert_eq!(sei_exact(&gen_necklace(4).unwrap()).unwrap().value, 8);
        assert_eq!(sei_exact(&gen_wheel(6).unwrap()).unwrap().value, 9);
        assert_eq!(sei_exact(&gen_wheel(3).unwrap()).unwrap().value, 6);
        assert_eq!(sei_exact(&gen_double_wheel(3, 5).unwrap()).unwrap().value, 9);
    }

    #[test]
    fn witnesses_verify_and_use_exact_palette() {
        for g in [gen_necklace(3).unwrap(), gen_wheel(5).unwrap(), gen_random(11, 8, false).unwrap()] {
            let r = sei_exact(&g).unwrap();
            let (ok, violations) = verify_strong_coloring(&g, &r.witness).unwrap();
            assert!(ok, "violations: {violations:?}");
            assert_eq!(r.witness.distinct_colors() as u32, r.value);
        }
    }

    #[test]
    fn tree_oracle() {
        let star = PlaneTree {
            root: 0,
            nodes: vec![
                TreeNode { id: 0, children: vec![1, 2, 3] },
                TreeNode { id: 1, children: vec![] },
                TreeNode { id: 2, children: vec![] },
                TreeNode { id: 3, children: vec![] },
            ],
        };
        assert_eq!(tree_sei_exact(&star).unwrap().value, 3);

        // A path with 3 edges: every pair of edges is within distance one.
        let path = PlaneTree {
            root: 0,
            nodes: vec![
                TreeNode { id: 0, children: vec![1, 2, 3] },
                TreeNode { id: 1, children: vec![] },
                TreeNode { id: 2, children: vec![] },
                TreeNode { id: 3, children: vec![4, 5] },
                TreeNode { id: 4, children: vec![] },
                TreeNode { id: 5, children: vec![] },
            ],
        };
        // Not literally a path, but tree_sei_exact should agree with the
        // closed form on it.
        assert_eq!(
            tree_sei_exact(&path).unwrap().value,
            crate::closed_form::tree_sei(&path).unwrap()
        );
    }

    #[test]
    fn budget_is_enforced() {
        let g = gen_random(5, 12, true).unwrap();
        let tight = Oracle::with_budget(1);
        match tight.sei_exact(&g) {
            Err(HalinError::BudgetExceeded(_)) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
        let big = gen_random(5, 40, true).unwrap();
        assert!(matches!(sei_exact(&big), Err(HalinError::BudgetExceeded(_))));
    }

    #[test]
    fn clique_bound_below_value_below_greedy() {
        for seed in 0..6u64 {
            let g = gen_random(seed, 4 + seed as u32, false).unwrap();
            let cg = build_conflict_graph(&g);
            let r = sei_exact(&g).unwrap();
            assert!(clique_lower_bound(&cg) <= r.value);
        }
    }
}
