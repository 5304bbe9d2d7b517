//! Exact strong chromatic index computation for Halin graphs.
//!
//! A strong edge coloring assigns colors to edges so that any two edges at
//! distance at most one receive different colors; the strong chromatic index
//! is the smallest palette admitting one. This crate computes it exactly for
//! Halin graphs (a plane tree without degree-two vertices whose leaves are
//! joined by a crossing-free cycle), through four routes that check each
//! other:
//!
//! * closed forms for cycles, wheels, double wheels and trees,
//! * a boundary dynamic program for cubic instances,
//! * a typed-boundary dynamic program for arbitrary degrees,
//! * a branch-and-bound oracle on the conflict graph, used as ground truth.
//!
//! Every solver can emit an explicit optimal coloring which is re-verified
//! against the conflict relation before being reported.
//!
//! ```
//! use halin::{gen_wheel, sei, wheel_sei};
//!
//! let g = gen_wheel(6).unwrap();
//! let result = sei(&g);
//! assert_eq!(result.value, 9);
//! assert_eq!(result.value, wheel_sei(6).unwrap());
//! ```

pub mod closed_form;
pub mod conflict;
pub mod dp;
pub mod enumerate;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod solver;
pub mod tree;

pub use closed_form::{bounds, cycle_sei, dispatch_closed_form, double_wheel_sei, tree_sei, wheel_sei, BoundReport};
pub use conflict::{build_conflict_graph, edges_conflict, verify_strong_coloring, ConflictGraph};
pub use dp::cubic::{decide_cubic, root_scopes, sei_cubic};
pub use dp::general::{decide_general, sei, signature, typed_boundary, TypedBoundary};
pub use enumerate::cubic_plane_trees;
pub use error::{HalinError, Result};
pub use generate::{gen_double_wheel, gen_necklace, gen_random, gen_wheel};
pub use graph::{Edge, EdgeColoring, EdgeKind, HalinGraph};
pub use oracle::{clique_lower_bound, sei_exact, tree_sei_exact, Oracle, OracleResult};
pub use solver::{solve, Method, SeiResult};
pub use tree::{PlaneTree, TreeNode};

// The guide chapters double as doc-tests so their code stays compilable.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }

    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(instances, "../../../book/src/instances.md");
    chapter!(conflicts, "../../../book/src/conflicts.md");
    chapter!(closed_forms, "../../../book/src/closed-forms.md");
    chapter!(oracle, "../../../book/src/oracle.md");
    chapter!(cubic_dp, "../../../book/src/cubic-dp.md");
    chapter!(general_dp, "../../../book/src/general-dp.md");
    chapter!(cli, "../../../book/src/cli.md");
}
