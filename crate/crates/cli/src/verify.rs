//! Independent re-validation of a solution file against its instance.

use rayon::prelude::*;
use steiner_core::geometry::search_window;
use steiner_core::oracle::{prim_mst, prim_weight_with, sampled_best_steiner};
use steiner_core::{distance, evaluate_cost, CostSpec, Edge, Point, Tree};

use crate::instance::Instance;
use crate::output::{Check, SolutionFile, Verification};

/// Sampling oracles see only a grid, so the solver may beat them but
/// never lose by more than these margins.
const SAMPLED_SLACK_K1: f64 = 1e-6;
const SAMPLED_SLACK_K2: f64 = 1e-5;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &str, ok: bool, detail: String) {
        self.0.push(Check {
            name: name.to_string(),
            ok,
            detail,
        });
    }
}

fn on_some_constraint(inst: &Instance, s: Point) -> bool {
    inst.lines.iter().any(|g| {
        let t = g.project(s);
        let r = g.range();
        let slack = 1e-9 * (1.0 + t.abs());
        t >= r.lo - slack && t <= r.hi + slack && distance(g.at(t), s) <= 1e-9 * (1.0 + s.norm())
    })
}

/// Connected and acyclic over `n` vertices, with indices in bounds.
fn spanning(n: usize, edges: &[(usize, usize, f64)]) -> Result<(), String> {
    if edges.len() + 1 != n {
        return Err(format!("{} edges for {n} vertices", edges.len()));
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(u, v, _) in edges {
        if u >= n || v >= n {
            return Err(format!("edge ({u}, {v}) out of bounds"));
        }
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return Err(format!("edge ({u}, {v}) closes a cycle"));
        }
        parent[a] = b;
    }
    Ok(())
}

/// Best pair of evenly spaced placements, `m` per constraint.
fn grid_pair_oracle(points: &[Point], inst: &Instance, m: usize) -> f64 {
    let samples: Vec<Vec<Point>> = inst
        .lines
        .iter()
        .map(|g| {
            let w = search_window(points, g);
            (0..m)
                .map(|k| g.at(w.lo + (w.hi - w.lo) * k as f64 / (m - 1) as f64))
                .collect()
        })
        .collect();
    let mut best = f64::INFINITY;
    for a in 0..samples.len() {
        for b in a..samples.len() {
            let local = samples[a]
                .par_iter()
                .map(|&p| {
                    samples[b]
                        .iter()
                        .map(|&q| prim_weight_with(points, &[p, q]))
                        .fold(f64::INFINITY, f64::min)
                })
                .reduce(|| f64::INFINITY, f64::min);
            best = best.min(local);
        }
    }
    best
}

pub fn verify(inst: &Instance, k: usize, sol: &SolutionFile, samples: usize) -> Verification {
    let pts = &inst.points;
    let n = pts.len();
    let steiner: Vec<Point> = sol
        .steiner_points
        .iter()
        .map(|&[x, y]| Point::new(x, y))
        .collect();
    let mut all = pts.clone();
    all.extend(&steiner);
    let mut c = Checks(Vec::new());

    c.push(
        "steiner_count",
        steiner.len() <= k,
        format!("{} Steiner points, k = {k}", steiner.len()),
    );
    let off: Vec<usize> = (0..steiner.len())
        .filter(|&j| !on_some_constraint(inst, steiner[j]))
        .collect();
    c.push(
        "on_constraint",
        off.is_empty(),
        format!("Steiner points off every constraint: {off:?}"),
    );
    let coincident = steiner.iter().any(|s| pts.contains(s));
    c.push(
        "distinct_from_terminals",
        !coincident,
        format!("coincident with a terminal: {coincident}"),
    );

    let tree = match spanning(all.len(), &sol.edges) {
        Ok(()) => {
            c.push("spanning_tree", true, format!("{} edges", sol.edges.len()));
            let edges = sol
                .edges
                .iter()
                .map(|&(u, v, _)| Edge::between(&all, u, v))
                .collect();
            Tree::new(all.clone(), n, edges).ok()
        }
        Err(e) => {
            c.push("spanning_tree", false, e);
            None
        }
    };
    let bad_weights: Vec<(usize, usize)> = sol
        .edges
        .iter()
        .filter(|&&(u, v, w)| u < all.len() && v < all.len() && !close(w, distance(all[u], all[v])))
        .map(|&(u, v, _)| (u, v))
        .collect();
    c.push(
        "edge_weights",
        bad_weights.is_empty(),
        format!("edges with wrong weight: {bad_weights:?}"),
    );
    let edge_sum: f64 = sol.edges.iter().map(|e| e.2).sum();
    c.push(
        "edge_sum",
        close(edge_sum, sol.total_weight),
        format!("edges sum to {edge_sum}, claimed {}", sol.total_weight),
    );

    let total = prim_weight_with(pts, &steiner);
    c.push(
        "minimum_on_vertices",
        close(total, sol.total_weight),
        format!(
            "MST of terminals and Steiner points {total}, claimed {}",
            sol.total_weight
        ),
    );
    let mst = prim_mst(pts).total_weight();
    c.push(
        "baseline",
        close(mst, sol.mst_weight),
        format!("MST of terminals {mst}, claimed {}", sol.mst_weight),
    );
    c.push(
        "savings",
        close(sol.savings, sol.mst_weight - sol.total_weight),
        format!(
            "savings {} vs difference {}",
            sol.savings,
            sol.mst_weight - sol.total_weight
        ),
    );
    c.push(
        "no_worse_than_mst",
        sol.total_weight <= mst + 1e-9 * mst.max(1.0),
        format!("total {} vs MST {mst}", sol.total_weight),
    );

    let terminal_edges = sol.edges.iter().filter(|e| e.0 < n && e.1 < n).count();
    let removed_ok = sol.removed_mst_edges.iter().all(|&(u, v, w)| {
        u < n
            && v < n
            && close(w, distance(pts[u], pts[v]))
            && !sol
                .edges
                .iter()
                .any(|e| (e.0, e.1) == (u, v) || (e.1, e.0) == (u, v))
    });
    c.push(
        "removed_mst_edges",
        removed_ok && terminal_edges + sol.removed_mst_edges.len() + 1 == n,
        format!(
            "{terminal_edges} terminal edges kept, {} removed, n = {n}",
            sol.removed_mst_edges.len()
        ),
    );

    if let Some(tree) = &tree {
        let mut mismatched = Vec::new();
        for (name, &claimed) in &sol.cost_report {
            let ok = name
                .parse::<CostSpec>()
                .ok()
                .and_then(|spec| evaluate_cost(tree, spec).ok())
                .is_some_and(|v| close(v, claimed));
            if !ok {
                mismatched.push(name.clone());
            }
        }
        c.push(
            "cost_report",
            mismatched.is_empty(),
            format!("mismatched costs: {mismatched:?}"),
        );
    }

    let sampled = inst
        .lines
        .iter()
        .map(|g| sampled_best_steiner(pts, g, samples).1)
        .fold(f64::INFINITY, f64::min);
    c.push(
        "sampled_single",
        sol.total_weight <= sampled + SAMPLED_SLACK_K1,
        format!(
            "total {} vs best sampled placement {sampled}",
            sol.total_weight
        ),
    );
    if k == 2 {
        let m = ((samples as f64).sqrt() as usize).max(2);
        let grid = grid_pair_oracle(pts, inst, m);
        c.push(
            "sampled_pair",
            sol.total_weight <= grid + SAMPLED_SLACK_K2,
            format!(
                "total {} vs best {m}x{m} grid pair {grid}",
                sol.total_weight
            ),
        );
    }

    Verification {
        ok: c.0.iter().all(|x| x.ok),
        mst_weight: mst,
        total_weight: total,
        checks: c.0,
    }
}
