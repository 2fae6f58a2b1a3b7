//! Brute-force reference computations. Nothing here reuses the fast paths;
//! only geometry primitives and the plain tree container are shared.

use rayon::prelude::*;

use crate::geometry::{cone_contains, distance, search_window, ConeIndex, Gamma, Point};
use crate::tree::{Edge, Tree};

/// Prim over the complete graph, `O(n²)`.
pub fn prim_mst(points: &[Point]) -> Tree {
    let edges = prim_edges(points);
    Tree::new(points.to_vec(), points.len(), edges).expect("prim output spans its input")
}

fn prim_edges(points: &[Point]) -> Vec<Edge> {
    let n = points.len();
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    let mut from = vec![0usize; n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    if n == 0 {
        return edges;
    }
    let mut cur = 0;
    in_tree[0] = true;
    for _ in 1..n {
        let c = points[cur];
        let mut next = usize::MAX;
        let mut next_d = f64::INFINITY;
        for v in 0..n {
            if in_tree[v] {
                continue;
            }
            let d = (points[v] - c).norm_sq();
            if d < best[v] {
                best[v] = d;
                from[v] = cur;
            }
            if best[v] < next_d {
                next_d = best[v];
                next = v;
            }
        }
        in_tree[next] = true;
        edges.push(Edge::between(points, from[next], next));
        cur = next;
    }
    edges
}

/// Weight of `MST(points ∪ extra)` by Prim.
pub fn prim_weight_with(points: &[Point], extra: &[Point]) -> f64 {
    let mut all = points.to_vec();
    all.extend_from_slice(extra);
    prim_edges(&all).iter().map(|e| e.weight).sum()
}

/// Best of `m` evenly spaced placements over the solver's search window:
/// `(t, |MST(P ∪ {γ(t)})|)`, lowest `t` on ties.
pub fn sampled_best_steiner(points: &[Point], gamma: &Gamma, m: usize) -> (f64, f64) {
    assert!(m >= 2, "need at least two samples");
    let w = search_window(points, gamma);
    (0..m)
        .into_par_iter()
        .map(|k| {
            let t = w.lo + (w.hi - w.lo) * k as f64 / (m - 1) as f64;
            (t, prim_weight_with(points, &[gamma.at(t)]))
        })
        .reduce(
            || (f64::NAN, f64::INFINITY),
            |a, b| {
                if b.1 < a.1 || (b.1 == a.1 && b.0 < a.0) {
                    b
                } else {
                    a
                }
            },
        )
}

/// Closest point of `points` inside cone `i` at `apex`.
pub fn nearest_in_cone(points: &[Point], apex: Point, i: ConeIndex) -> Option<usize> {
    let mut best: Option<(f64, usize)> = None;
    for (k, &p) in points.iter().enumerate() {
        if p == apex || !cone_contains(apex, i, p).unwrap_or(false) {
            continue;
        }
        let d = distance(apex, p);
        if best.is_none_or(|(bd, _)| d < bd) {
            best = Some((d, k));
        }
    }
    best.map(|b| b.1)
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            x = self.0[x];
        }
        x
    }

    fn join(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
        ra != rb
    }
}

/// Weight of the lightest spanning tree of `P ∪ steiner` that contains the
/// `forced` edges (Steiner vertex `j` is index `n + j`) and otherwise uses
/// only edges of the terminal MST `mst`. `None` when `forced` has a cycle.
pub fn forced_forest_mst(mst: &Tree, steiner: &[Point], forced: &[(usize, usize)]) -> Option<f64> {
    let n = mst.terminal_count();
    let mut all = mst.vertices()[..n].to_vec();
    all.extend_from_slice(steiner);
    let mut dsu = Dsu((0..all.len()).collect());
    let mut total = 0.0;
    for &(a, b) in forced {
        if !dsu.join(a, b) {
            return None;
        }
        total += distance(all[a], all[b]);
    }
    let mut rest = mst.edges().to_vec();
    rest.sort_by(|x, y| x.weight.total_cmp(&y.weight));
    for e in rest {
        if dsu.join(e.u, e.v) {
            total += e.weight;
        }
    }
    Some(total)
}

/// [`forced_forest_mst`] for a single Steiner point joined to `neighbors`.
pub fn forced_star_mst(mst: &Tree, s: Point, neighbors: &[usize]) -> f64 {
    let n = mst.terminal_count();
    let forced: Vec<(usize, usize)> = neighbors.iter().map(|&a| (a, n)).collect();
    forced_forest_mst(mst, &[s], &forced).expect("a star is acyclic")
}
