//! Symmetric cost functions of a tree's edge lengths, evaluated after the
//! fact on the length-minimal tree.

use std::fmt;
use std::str::FromStr;

use crate::error::{Result, SteinerError};
use crate::tree::Tree;

/// Attached to every cost report.
pub const COST_NOTE: &str = "costs are evaluated on the total-length-optimal tree; \
every power and max-edge cost is minimized by a minimum spanning tree on the same vertex set, \
so that tree is optimal for each reported cost as well";

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CostSpec {
    /// Sum of `w^p` over edges, `p > 0`.
    Power(f64),
    /// Largest edge weight.
    MaxEdge,
}

impl CostSpec {
    pub fn power(p: f64) -> Result<Self> {
        if p.is_finite() && p > 0.0 {
            Ok(CostSpec::Power(p))
        } else {
            Err(SteinerError::BadCostSpec(format!(
                "power exponent must be finite and positive, got {p}"
            )))
        }
    }
}

impl fmt::Display for CostSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CostSpec::Power(p) => write!(f, "power_{p}"),
            CostSpec::MaxEdge => f.write_str("max_edge"),
        }
    }
}

impl FromStr for CostSpec {
    type Err = SteinerError;

    fn from_str(s: &str) -> Result<Self> {
        if s == "max_edge" {
            return Ok(CostSpec::MaxEdge);
        }
        let p = s
            .strip_prefix("power_")
            .and_then(|x| x.parse::<f64>().ok())
            .ok_or_else(|| SteinerError::BadCostSpec(s.to_string()))?;
        CostSpec::power(p)
    }
}

/// Cost of an edge-weight multiset.
pub fn evaluate_weights(weights: &[f64], spec: CostSpec) -> Result<f64> {
    if weights.is_empty() {
        return Err(SteinerError::EmptyTree);
    }
    Ok(match spec {
        CostSpec::Power(1.0) => weights.iter().sum(),
        CostSpec::Power(p) => weights.iter().map(|w| w.powf(p)).sum(),
        CostSpec::MaxEdge => weights.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    })
}

pub fn evaluate_cost(tree: &Tree, spec: CostSpec) -> Result<f64> {
    let w: Vec<f64> = tree.edges().iter().map(|e| e.weight).collect();
    evaluate_weights(&w, spec)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CostReport {
    pub entries: Vec<(CostSpec, f64)>,
    pub note: &'static str,
}

pub fn cost_report(tree: &Tree, specs: &[CostSpec]) -> Result<CostReport> {
    let entries = specs
        .iter()
        .map(|&s| evaluate_cost(tree, s).map(|v| (s, v)))
        .collect::<Result<_>>()?;
    Ok(CostReport {
        entries,
        note: COST_NOTE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::tree::{emst, Edge};
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let w = [1.0, 2.0];
        assert_eq!(evaluate_weights(&w, CostSpec::Power(1.0)).unwrap(), 3.0);
        assert_eq!(evaluate_weights(&w, CostSpec::Power(2.0)).unwrap(), 5.0);
        assert_eq!(evaluate_weights(&w, CostSpec::MaxEdge).unwrap(), 2.0);
        assert_eq!(
            evaluate_weights(&[], CostSpec::MaxEdge),
            Err(SteinerError::EmptyTree)
        );
    }

    #[test]
    fn parsing_round_trips() {
        for s in ["power_1", "power_2.5", "max_edge"] {
            assert_eq!(s.parse::<CostSpec>().unwrap().to_string(), s);
        }
        for bad in ["power_0", "power_-1", "power_x", "power_inf", "sum", ""] {
            assert!(bad.parse::<CostSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn single_edge_tree() {
        let pts = vec![Point::new(0.0, 0.0), Point::new(3.0, 4.0)];
        let t = Tree::new(pts.clone(), 2, vec![Edge::between(&pts, 0, 1)]).unwrap();
        assert_eq!(evaluate_cost(&t, CostSpec::MaxEdge).unwrap(), 5.0);
        let lone = Tree::new(vec![Point::new(0.0, 0.0)], 1, vec![]).unwrap();
        assert_eq!(
            evaluate_cost(&lone, CostSpec::Power(1.0)),
            Err(SteinerError::EmptyTree)
        );
    }

    #[test]
    fn high_power_tracks_max_edge_on_random_trees() {
        for seed in 0..20 {
            let t = emst(&crate::random::uniform_points(200, seed)).unwrap();
            let p64 = evaluate_cost(&t, CostSpec::Power(64.0))
                .unwrap()
                .powf(1.0 / 64.0);
            let mx = evaluate_cost(&t, CostSpec::MaxEdge).unwrap();
            let mut w: Vec<f64> = t.edges().iter().map(|e| e.weight).collect();
            w.sort_by(f64::total_cmp);
            let m = w.len() as f64;
            let second = w[w.len() - 2] / mx;
            let bound = (1.0 + (m - 1.0) * second.powi(64)).powf(1.0 / 64.0);
            assert!(
                p64 >= mx && p64 <= bound * mx * (1.0 + 1e-12),
                "seed {seed}"
            );
        }
    }

    proptest! {
        #[test]
        fn power_one_is_total_weight(coords in prop::collection::vec((0.0..1.0f64, 0.0..1.0f64), 2..40)) {
            let mut pts: Vec<Point> = coords.into_iter().map(|(x, y)| Point::new(x, y)).collect();
            pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
            pts.dedup();
            prop_assume!(pts.len() >= 2);
            let t = emst(&pts).unwrap();
            let c = evaluate_cost(&t, CostSpec::Power(1.0)).unwrap();
            prop_assert!((c - t.total_weight()).abs() < 1e-9);
            let p64 = evaluate_cost(&t, CostSpec::Power(64.0)).unwrap().powf(1.0 / 64.0);
            let mx = evaluate_cost(&t, CostSpec::MaxEdge).unwrap();
            let m = t.edges().len() as f64;
            prop_assert!(p64 >= mx * (1.0 - 1e-12) && p64 <= mx * m.powf(1.0 / 64.0) * (1.0 + 1e-12));
        }

        #[test]
        fn permutation_invariant(mut w in prop::collection::vec(0.0..10.0f64, 1..30), p in 0.1..4.0f64, seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let before = evaluate_weights(&w, CostSpec::Power(p)).unwrap();
            let mx = evaluate_weights(&w, CostSpec::MaxEdge).unwrap();
            w.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let after = evaluate_weights(&w, CostSpec::Power(p)).unwrap();
            prop_assert!((before - after).abs() <= 1e-9 * (1.0 + before));
            prop_assert_eq!(mx, evaluate_weights(&w, CostSpec::MaxEdge).unwrap());
        }
    }
}
