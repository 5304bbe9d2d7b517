//! The Halin graph data model: a validated plane tree plus the leaf cycle,
//! with a deterministic unified edge index.

use std::collections::HashMap;

use crate::error::{HalinError, Result};
use crate::tree::PlaneTree;

/// Whether an edge belongs to the tree or to the leaf cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Tree,
    Cycle,
}

/// An edge of the Halin graph. Endpoints are external vertex ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub index: u32,
    pub kind: EdgeKind,
    pub endpoints: (u32, u32),
}

/// A (possibly partial) assignment of colors to edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    colors: Vec<Option<u32>>,
    palette_size: u32,
}

impl EdgeColoring {
    pub fn new(edge_count: usize, palette_size: u32) -> Self {
        EdgeColoring { colors: vec![None; edge_count], palette_size }
    }

    pub fn from_colors(colors: Vec<u32>, palette_size: u32) -> Self {
        EdgeColoring { colors: colors.into_iter().map(Some).collect(), palette_size }
    }

    pub fn palette_size(&self) -> u32 {
        self.palette_size
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn get(&self, edge: u32) -> Option<u32> {
        self.colors.get(edge as usize).copied().flatten()
    }

    pub fn set(&mut self, edge: u32, color: u32) {
        assert!(color < self.palette_size, "color outside palette");
        self.colors[edge as usize] = Some(color);
    }

    pub fn is_complete(&self) -> bool {
        self.colors.iter().all(|c| c.is_some())
    }

    /// Number of distinct colors actually used.
    pub fn distinct_colors(&self) -> usize {
        let mut seen = vec![false; self.palette_size as usize];
        for c in self.colors.iter().flatten() {
            seen[*c as usize] = true;
        }
        seen.iter().filter(|b| **b).count()
    }

    /// Index of the first uncolored edge, if any.
    pub fn first_missing(&self) -> Option<u32> {
        self.colors.iter().position(|c| c.is_none()).map(|i| i as u32)
    }

    /// Renumber colors by first use so exactly `distinct_colors` labels
    /// 0..d are used. Keeps the coloring otherwise identical.
    pub fn normalized(&self) -> EdgeColoring {
        let mut map: HashMap<u32, u32> = HashMap::new();
        let mut next = 0u32;
        let colors = self
            .colors
            .iter()
            .map(|c| {
                c.map(|c| {
                    *map.entry(c).or_insert_with(|| {
                        let v = next;
                        next += 1;
                        v
                    })
                })
            })
            .collect();
        EdgeColoring { colors, palette_size: next.max(1) }
    }
}

/// A validated Halin graph: plane tree, leaf cycle, and indexed edges.
///
/// Edge indices are deterministic: tree edges first in DFS pre-order of the
/// child endpoint, then cycle edges in cycle order. Vertices are referred to
/// externally by their ids and internally by compact indices.
#[derive(Debug, Clone)]
pub struct HalinGraph {
    tree: PlaneTree,
    ids: Vec<u32>,
    idx_of: HashMap<u32, usize>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root: usize,
    cycle_order: Vec<usize>,
    edges: Vec<Edge>,
    /// Per vertex: (neighbor, edge index), sorted by neighbor.
    adj: Vec<Vec<(usize, u32)>>,
}

impl HalinGraph {
    /// Validate a plane tree description and build the Halin graph on it.
    pub fn from_plane_tree(tree: PlaneTree) -> Result<Self> {
        let n = tree.nodes.len();
        if n == 0 {
            return Err(HalinError::MalformedTree("empty node list".into()));
        }

        let mut idx_of = HashMap::with_capacity(n);
        let mut ids = Vec::with_capacity(n);
        for node in &tree.nodes {
            if idx_of.insert(node.id, ids.len()).is_some() {
                return Err(HalinError::MalformedTree(format!("duplicate id {}", node.id)));
            }
            ids.push(node.id);
        }
        let root = *idx_of
            .get(&tree.root)
            .ok_or_else(|| HalinError::MalformedTree(format!("missing root {}", tree.root)))?;

        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for node in &tree.nodes {
            let pi = idx_of[&node.id];
            for &c in &node.children {
                let ci = *idx_of
                    .get(&c)
                    .ok_or_else(|| HalinError::MalformedTree(format!("unknown child id {c}")))?;
                if ci == root {
                    return Err(HalinError::MalformedTree(format!(
                        "root {} appears as a child",
                        tree.root
                    )));
                }
                if parent[ci].is_some() {
                    return Err(HalinError::MalformedTree(format!("vertex {c} has two parents")));
                }
                parent[ci] = Some(pi);
                children[pi].push(ci);
            }
        }

        // Reachability from the root; anything unreachable means a cycle
        // among the ids or a disconnected forest.
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![root];
        let mut seen = vec![false; n];
        seen[root] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &c in children[v].iter().rev() {
                if seen[c] {
                    return Err(HalinError::MalformedTree("cycle among ids".into()));
                }
                seen[c] = true;
                stack.push(c);
            }
        }
        if order.len() != n {
            return Err(HalinError::MalformedTree("unreachable vertices (cycle among ids?)".into()));
        }

        // No vertex of tree degree two.
        for v in 0..n {
            let deg = children[v].len() + usize::from(v != root);
            if deg == 2 {
                return Err(HalinError::DegreeTwoVertex(ids[v]));
            }
        }

        // Leaves in DFS pre-order become the cycle.
        let mut cycle_order = Vec::new();
        for &v in &order {
            let deg = children[v].len() + usize::from(v != root);
            if deg == 1 {
                cycle_order.push(v);
            }
        }
        if cycle_order.len() < 3 {
            return Err(HalinError::TooFewLeaves(cycle_order.len()));
        }

        // Tree edges in DFS pre-order of the child endpoint, then cycle edges.
        let mut edges = Vec::with_capacity(n - 1 + cycle_order.len());
        for &v in &order {
            if let Some(p) = parent[v] {
                edges.push(Edge {
                    index: edges.len() as u32,
                    kind: EdgeKind::Tree,
                    endpoints: (ids[p], ids[v]),
                });
            }
        }
        let m = cycle_order.len();
        for i in 0..m {
            let a = cycle_order[i];
            let b = cycle_order[(i + 1) % m];
            edges.push(Edge {
                index: edges.len() as u32,
                kind: EdgeKind::Cycle,
                endpoints: (ids[a], ids[b]),
            });
        }

        let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
        for e in &edges {
            let u = idx_of[&e.endpoints.0];
            let v = idx_of[&e.endpoints.1];
            adj[u].push((v, e.index));
            adj[v].push((u, e.index));
        }
        for row in &mut adj {
            row.sort_unstable();
        }

        let g = HalinGraph { tree, ids, idx_of, parent, children, root, cycle_order, edges, adj };
        debug_assert!(g.cycle_order.iter().all(|&v| g.adj[v].len() == 3));
        Ok(g)
    }

    pub fn tree(&self) -> &PlaneTree {
        &self.tree
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: u32) -> Result<&Edge> {
        self.edges.get(index as usize).ok_or(HalinError::InvalidEdgeIndex(index))
    }

    /// Leaf ids in cycle order.
    pub fn cycle_order_ids(&self) -> Vec<u32> {
        self.cycle_order.iter().map(|&v| self.ids[v]).collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.cycle_order.len()
    }

    /// Degree of a vertex in the Halin graph.
    pub fn degree(&self, id: u32) -> Result<u32> {
        let v = self.index_of(id)?;
        Ok(self.adj[v].len() as u32)
    }

    /// Degree of a vertex in the underlying tree.
    pub fn tree_degree(&self, id: u32) -> Result<u32> {
        let v = self.index_of(id)?;
        Ok(self.children[v].len() as u32 + u32::from(v != self.root))
    }

    pub fn max_degree(&self) -> u32 {
        (0..self.vertex_count()).map(|v| self.adj[v].len() as u32).max().unwrap_or(0)
    }

    /// True when every internal tree vertex has tree degree exactly three.
    pub fn is_cubic(&self) -> bool {
        (0..self.vertex_count()).all(|v| {
            let deg = self.children[v].len() + usize::from(v != self.root);
            deg == 1 || deg == 3
        })
    }

    /// Internal tree vertices (tree degree at least three).
    pub fn internal_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.children[v].len() + usize::from(v != self.root) >= 3)
            .collect()
    }

    // ---- internal-index API used by the solvers ----

    pub(crate) fn index_of(&self, id: u32) -> Result<usize> {
        self.idx_of.get(&id).copied().ok_or(HalinError::UnknownVertex(id))
    }

    pub(crate) fn id_of(&self, v: usize) -> u32 {
        self.ids[v]
    }

    pub(crate) fn root_index(&self) -> usize {
        self.root
    }

    pub(crate) fn parent_of(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub(crate) fn children_of(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub(crate) fn cycle_order_indices(&self) -> &[usize] {
        &self.cycle_order
    }

    /// Incident (neighbor, edge) pairs, sorted by neighbor index.
    pub(crate) fn incident(&self, v: usize) -> &[(usize, u32)] {
        &self.adj[v]
    }

    /// The edge between two vertex indices, if present.
    pub(crate) fn edge_between(&self, u: usize, v: usize) -> Option<u32> {
        let row = &self.adj[u];
        row.binary_search_by_key(&v, |&(w, _)| w).ok().map(|i| row[i].1)
    }

    /// Internal endpoint indices of an edge.
    pub(crate) fn edge_vertices(&self, e: u32) -> (usize, usize) {
        let edge = &self.edges[e as usize];
        (self.idx_of[&edge.endpoints.0], self.idx_of[&edge.endpoints.1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::TreeNode;

    pub(crate) fn star(n: usize) -> PlaneTree {
        let mut nodes = vec![TreeNode { id: 0, children: (1..=n as u32).collect() }];
        nodes.extend((1..=n as u32).map(|id| TreeNode { id, children: vec![] }));
        PlaneTree { root: 0, nodes }
    }

    #[test]
    fn smallest_instance_is_k4() {
        let g = HalinGraph::from_plane_tree(star(3)).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.degree(0).unwrap(), 3);
        assert_eq!(g.degree(1).unwrap(), 3);
        assert!(g.is_cubic());
    }

    #[test]
    fn degree_two_vertex_is_rejected() {
        // Path of two internal nodes where one has a single child.
        let t = PlaneTree {
            root: 0,
            nodes: vec![
                TreeNode { id: 0, children: vec![1, 2, 3] },
                TreeNode { id: 1, children: vec![4] },
                TreeNode { id: 2, children: vec![] },
                TreeNode { id: 3, children: vec![] },
                TreeNode { id: 4, children: vec![] },
            ],
        };
        assert_eq!(HalinGraph::from_plane_tree(t).err(), Some(HalinError::DegreeTwoVertex(1)));
    }

    #[test]
    fn duplicate_and_cyclic_inputs_are_rejected() {
        let dup = PlaneTree {
            root: 0,
            nodes: vec![
                TreeNode { id: 0, children: vec![1] },
                TreeNode { id: 1, children: vec![] },
                TreeNode { id: 1, children: vec![] },
            ],
        };
        assert!(matches!(HalinGraph::from_plane_tree(dup), Err(HalinError::MalformedTree(_))));

        let two_parents = PlaneTree {
            root: 0,
            nodes: vec![
                TreeNode { id: 0, children: vec![1, 2, 2] },
                TreeNode { id: 1, children: vec![] },
                TreeNode { id: 2, children: vec![] },
            ],
        };
        assert!(matches!(
            HalinGraph::from_plane_tree(two_parents),
            Err(HalinError::MalformedTree(_))
        ));
    }

    #[test]
    fn too_few_leaves() {
        // A root with no children is a degenerate single vertex.
        let t = PlaneTree { root: 5, nodes: vec![TreeNode { id: 5, children: vec![] }] };
        assert!(matches!(HalinGraph::from_plane_tree(t), Err(HalinError::TooFewLeaves(_))));
    }

    #[test]
    fn prism_from_two_internal_nodes() {
        let t = PlaneTree {
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
        let g = HalinGraph::from_plane_tree(t).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 9);
        for id in 0..6 {
            assert_eq!(g.degree(id).unwrap(), 3);
        }
    }

    #[test]
    fn edge_indexing_is_tree_dfs_then_cycle() {
        let g = HalinGraph::from_plane_tree(star(3)).unwrap();
        let kinds: Vec<_> = g.edges().iter().map(|e| e.kind).collect();
        assert_eq!(
            kinds,
            vec![
                EdgeKind::Tree,
                EdgeKind::Tree,
                EdgeKind::Tree,
                EdgeKind::Cycle,
                EdgeKind::Cycle,
                EdgeKind::Cycle
            ]
        );
        assert_eq!(g.edges()[3].endpoints, (1, 2));
        assert_eq!(g.edges()[5].endpoints, (3, 1));
    }

    #[test]
    fn coloring_normalization() {
        let c = EdgeColoring::from_colors(vec![5, 5, 9, 2], 10);
        let n = c.normalized();
        assert_eq!(n.get(0), Some(0));
        assert_eq!(n.get(1), Some(0));
        assert_eq!(n.get(2), Some(1));
        assert_eq!(n.get(3), Some(2));
        assert_eq!(n.distinct_colors(), 3);
    }
}
