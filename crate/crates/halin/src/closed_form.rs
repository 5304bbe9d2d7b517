//! Closed-form values for cycles, wheels, double wheels and trees, plus the
//! two generic bounds every instance satisfies.

use serde::Serialize;

use crate::error::{HalinError, Result};
use crate::graph::HalinGraph;
use crate::tree::PlaneTree;

/// The bound report attached to every solve:
/// `tree_sei <= sei(G) <= min(upper_eq1, upper_eq2)` with
/// `upper_eq1 = tree_sei + cycle_sei(|C|)` and `upper_eq2 = 2*maxdeg + 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    #[serde(rename = "treeSei")]
    pub tree_sei: u32,
    #[serde(rename = "lowerBound")]
    pub lower_bound: u32,
    #[serde(rename = "upperEq1")]
    pub upper_eq1: u32,
    #[serde(rename = "upperEq2")]
    pub upper_eq2: u32,
}

/// Strong chromatic index of the cycle C_n.
pub fn cycle_sei(n: u32) -> Result<u32> {
    if n < 3 {
        return Err(HalinError::BadArgument(format!("cycle needs n >= 3, got {n}")));
    }
    Ok(if n % 3 == 0 {
        3
    } else if n == 5 {
        5
    } else {
        4
    })
}

/// Strong chromatic index of the wheel W_n (n cycle vertices plus a hub).
pub fn wheel_sei(n: u32) -> Result<u32> {
    if n < 3 {
        return Err(HalinError::BadArgument(format!("wheel needs n >= 3, got {n}")));
    }
    Ok(if n % 3 == 0 {
        n + 3
    } else if n == 5 {
        n + 5
    } else {
        n + 4
    })
}

/// Strong chromatic index of the double wheel with hub degrees dx and dy.
/// Arguments are normalized so order does not matter.
pub fn double_wheel_sei(dx: u32, dy: u32) -> Result<u32> {
    if dx < 3 || dy < 3 {
        return Err(HalinError::BadArgument(format!(
            "double wheel needs degrees >= 3, got ({dx}, {dy})"
        )));
    }
    let (lo, hi) = (dx.min(dy), dx.max(dy));
    Ok(if lo == 3 && hi == 3 {
        9
    } else if lo == 3 {
        hi + 4
    } else {
        lo + hi
    })
}

/// Strong chromatic index of a tree: the maximum of d(u) + d(v) - 1 over
/// tree edges (u, v), degrees taken in the tree.
pub fn tree_sei(tree: &PlaneTree) -> Result<u32> {
    if tree.is_empty() {
        return Err(HalinError::MalformedTree("empty node list".into()));
    }
    let mut best = 0u32;
    for node in &tree.nodes {
        let du = tree.tree_degree(node.id)?;
        for &c in &node.children {
            let dv = tree.tree_degree(c)?;
            best = best.max(du + dv - 1);
        }
    }
    if best == 0 {
        return Err(HalinError::MalformedTree("tree has no edges".into()));
    }
    Ok(best)
}

/// Lower and upper bounds for a validated instance.
pub fn bounds(g: &HalinGraph) -> BoundReport {
    let t = tree_sei(g.tree()).expect("validated instance has tree edges");
    let c = cycle_sei(g.leaf_count() as u32).expect("validated instance has >= 3 leaves");
    BoundReport {
        tree_sei: t,
        lower_bound: t,
        upper_eq1: t + c,
        upper_eq2: 2 * g.max_degree() + 4,
    }
}

/// Closed-form answer when the tree has exactly one internal vertex (wheel)
/// or exactly two (double wheel); `None` otherwise.
pub fn dispatch_closed_form(g: &HalinGraph) -> Option<u32> {
    let internal = g.internal_vertices();
    match internal.len() {
        1 => wheel_sei(g.leaf_count() as u32).ok(),
        2 => {
            let dx = g.degree(g.id_of(internal[0])).expect("internal vertex exists");
            let dy = g.degree(g.id_of(internal[1])).expect("internal vertex exists");
            double_wheel_sei(dx, dy).ok()
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_double_wheel, gen_necklace, gen_random, gen_wheel};

    #[test]
    fn cycle_values() {
        assert_eq!(cycle_sei(6).unwrap(), 3);
        assert_eq!(cycle_sei(5).unwrap(), 5);
        assert_eq!(cycle_sei(7).unwrap(), 4);
        assert!(cycle_sei(2).is_err());
    }

    #[test]
    fn wheel_values() {
        assert_eq!(wheel_sei(3).unwrap(), 6);
        assert_eq!(wheel_sei(5).unwrap(), 10);
        assert_eq!(wheel_sei(7).unwrap(), 11);
        assert!(wheel_sei(2).is_err());
    }

    #[test]
    fn double_wheel_values() {
        assert_eq!(double_wheel_sei(3, 3).unwrap(), 9);
        assert_eq!(double_wheel_sei(3, 5).unwrap(), 9);
        assert_eq!(double_wheel_sei(5, 3).unwrap(), 9);
        assert_eq!(double_wheel_sei(4, 4).unwrap(), 8);
        assert!(double_wheel_sei(2, 5).is_err());
    }

    #[test]
    fn small_value_windows() {
        for n in 3..=40 {
            let c = cycle_sei(n).unwrap();
            assert!((3..=5).contains(&c));
            let w = wheel_sei(n).unwrap();
            assert!((3..=5).contains(&(w - n)));
        }
    }

    #[test]
    fn tree_formula() {
        let star = gen_wheel(3).unwrap();
        assert_eq!(tree_sei(star.tree()).unwrap(), 3);
        let dw = gen_double_wheel(4, 5).unwrap();
        assert_eq!(tree_sei(dw.tree()).unwrap(), 8);
    }

    #[test]
    fn bound_reports() {
        let prism = gen_necklace(2).unwrap();
        let b = bounds(&prism);
        assert_eq!(
            b,
            BoundReport { tree_sei: 5, lower_bound: 5, upper_eq1: 9, upper_eq2: 10 }
        );

        let k4 = gen_wheel(3).unwrap();
        assert_eq!(
            bounds(&k4),
            BoundReport { tree_sei: 3, lower_bound: 3, upper_eq1: 6, upper_eq2: 10 }
        );

        let w6 = gen_wheel(6).unwrap();
        assert_eq!(
            bounds(&w6),
            BoundReport { tree_sei: 6, lower_bound: 6, upper_eq1: 9, upper_eq2: 16 }
        );
    }

    #[test]
    fn bound_invariants_hold_on_random_instances() {
        for seed in 0..20u64 {
            let g = gen_random(seed, 4 + (seed as u32 % 20), seed % 2 == 0).unwrap();
            let b = bounds(&g);
            assert_eq!(b.lower_bound, b.tree_sei);
            assert!(b.upper_eq1 >= b.tree_sei && b.upper_eq1 <= b.tree_sei + 5);
            assert_eq!(b.upper_eq2, 2 * g.max_degree() + 4);
        }
    }

    #[test]
    fn dispatch_recognizes_structure() {
        assert_eq!(dispatch_closed_form(&gen_wheel(5).unwrap()), Some(10));
        assert_eq!(dispatch_closed_form(&gen_necklace(2).unwrap()), Some(9));
        assert_eq!(dispatch_closed_form(&gen_necklace(3).unwrap()), None);
    }
}
