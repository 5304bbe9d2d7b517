//! Method dispatch: closed forms where the structure allows, the cubic DP
//! for cubic instances, the general DP otherwise, and the oracle on demand.

use serde::Serialize;

use crate::closed_form::{self, BoundReport};
use crate::conflict::verify_strong_coloring;
use crate::dp::{cubic, general, DpStats};
use crate::error::{HalinError, Result};
use crate::graph::{EdgeColoring, HalinGraph};
use crate::oracle::Oracle;

/// Solve methods the library and CLI expose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Auto,
    #[serde(rename = "closed")]
    ClosedForm,
    #[serde(rename = "cubic")]
    CubicDp,
    #[serde(rename = "general")]
    GeneralDp,
    Oracle,
}

impl std::str::FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Method::Auto),
            "closed" => Ok(Method::ClosedForm),
            "cubic" => Ok(Method::CubicDp),
            "general" => Ok(Method::GeneralDp),
            "oracle" => Ok(Method::Oracle),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

/// A computed strong chromatic index with everything needed to audit it.
#[derive(Debug, Clone)]
pub struct SeiResult {
    pub value: u32,
    pub witness: Option<EdgeColoring>,
    pub method: Method,
    pub bounds: BoundReport,
    pub stats: DpStats,
}

/// Solve with an explicit method choice. `Auto` picks the closed form for
/// wheels and double wheels, the cubic DP for cubic instances, and the
/// general DP otherwise. Every witness is verified before being returned.
pub fn solve(g: &HalinGraph, method: Method, want_witness: bool) -> Result<SeiResult> {
    let mut result = match method {
        Method::Auto => {
            if closed_form::dispatch_closed_form(g).is_some() {
                solve_closed(g, want_witness)?
            } else if g.is_cubic() {
                solve_cubic(g, want_witness)?
            } else {
                general::sei_with(g, want_witness)
            }
        }
        Method::ClosedForm => solve_closed(g, want_witness)?,
        Method::CubicDp => solve_cubic(g, want_witness)?,
        Method::GeneralDp => {
            let mut r = general::sei_with(g, want_witness);
            r.method = Method::GeneralDp;
            r
        }
        Method::Oracle => {
            let oracle = Oracle::default().sei_exact(g)?;
            SeiResult {
                value: oracle.value,
                witness: Some(oracle.witness),
                method: Method::Oracle,
                bounds: closed_form::bounds(g),
                stats: DpStats::default(),
            }
        }
    };

    if !want_witness {
        result.witness = None;
    }
    if let Some(w) = &result.witness {
        let (ok, violations) = verify_strong_coloring(g, w)?;
        assert!(ok, "computed witness failed verification: {violations:?}");
        assert_eq!(
            w.distinct_colors() as u32,
            result.value,
            "witness must use exactly the computed number of colors"
        );
    }
    let b = &result.bounds;
    debug_assert!(result.value >= b.lower_bound);
    debug_assert!(result.value <= b.upper_eq1.min(b.upper_eq2));
    Ok(result)
}

fn solve_closed(g: &HalinGraph, want_witness: bool) -> Result<SeiResult> {
    let value = closed_form::dispatch_closed_form(g).ok_or_else(|| {
        HalinError::MethodInapplicable(
            "closed forms cover wheels and double wheels only".into(),
        )
    })?;
    let witness = if want_witness {
        // The DPs produce the explicit coloring; the closed form pins the
        // value they must hit.
        let dp = if g.is_cubic() { cubic::sei_cubic(g)? } else { general::sei_with(g, true) };
        assert_eq!(dp.value, value, "dynamic program disagrees with closed form");
        dp.witness
    } else {
        None
    };
    Ok(SeiResult {
        value,
        witness,
        method: Method::ClosedForm,
        bounds: closed_form::bounds(g),
        stats: DpStats::default(),
    })
}

fn solve_cubic(g: &HalinGraph, want_witness: bool) -> Result<SeiResult> {
    if !g.is_cubic() {
        return Err(HalinError::MethodInapplicable("instance is not cubic".into()));
    }
    if want_witness {
        cubic::sei_cubic(g)
    } else {
        let (value, stats) = cubic::sei_cubic_value(g)?;
        Ok(SeiResult {
            value,
            witness: None,
            method: Method::CubicDp,
            bounds: closed_form::bounds(g),
            stats,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_necklace, gen_random, gen_wheel};

    #[test]
    fn auto_agrees_across_methods_on_prism() {
        let g = gen_necklace(2).unwrap();
        let auto = solve(&g, Method::Auto, true).unwrap();
        assert_eq!(auto.value, 9);
        assert_eq!(auto.method, Method::ClosedForm);
        for m in [Method::ClosedForm, Method::CubicDp, Method::GeneralDp, Method::Oracle] {
            assert_eq!(solve(&g, m, true).unwrap().value, 9);
        }
    }

    #[test]
    fn method_applicability() {
        let w5 = gen_wheel(5).unwrap();
        assert!(matches!(
            solve(&w5, Method::CubicDp, false),
            Err(HalinError::MethodInapplicable(_))
        ));
        let random = gen_random(3, 9, true).unwrap();
        assert!(matches!(
            solve(&random, Method::ClosedForm, false),
            Err(HalinError::MethodInapplicable(_))
        ));
        let big = gen_random(3, 200, true).unwrap();
        assert!(matches!(solve(&big, Method::Oracle, false), Err(HalinError::BudgetExceeded(_))));
    }
}
