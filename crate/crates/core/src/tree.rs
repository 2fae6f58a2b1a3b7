//! Weighted spanning trees and the Euclidean minimum spanning tree.

use std::cmp::Ordering;

use crate::delaunay::delaunay_edges;
use crate::dsu::DisjointSet;
use crate::error::{Result, SteinerError};
use crate::geometry::{distance, Point};

/// Undirected weighted edge with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

impl Edge {
    pub fn new(a: usize, b: usize, weight: f64) -> Self {
        Edge {
            u: a.min(b),
            v: a.max(b),
            weight,
        }
    }

    pub fn between(points: &[Point], a: usize, b: usize) -> Self {
        Edge::new(a, b, distance(points[a], points[b]))
    }

    pub fn key(&self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// Total order used wherever equal weights must be made distinct:
    /// weight, then smaller endpoint, then larger endpoint.
    pub fn tie_break_cmp(&self, other: &Edge) -> Ordering {
        self.weight
            .total_cmp(&other.weight)
            .then(self.u.cmp(&other.u))
            .then(self.v.cmp(&other.v))
    }
}

/// A spanning tree over terminals `0..terminal_count` followed by any
/// Steiner vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct Tree {
    vertices: Vec<Point>,
    terminal_count: usize,
    edges: Vec<Edge>,
    total_weight: f64,
}

impl Tree {
    /// Validates that `edges` span `vertices` without cycles.
    pub fn new(vertices: Vec<Point>, terminal_count: usize, edges: Vec<Edge>) -> Result<Self> {
        if terminal_count > vertices.len() {
            return Err(SteinerError::VertexOutOfBounds(terminal_count));
        }
        if vertices.is_empty() {
            return Err(SteinerError::TooFewPoints {
                required: 1,
                got: 0,
            });
        }
        if edges.len() + 1 != vertices.len() {
            return Err(SteinerError::NotASpanningTree);
        }
        let mut dsu = DisjointSet::new(vertices.len());
        for e in &edges {
            if e.v >= vertices.len() {
                return Err(SteinerError::VertexOutOfBounds(e.v));
            }
            if dsu.union(e.u, e.v).is_none() {
                return Err(SteinerError::NotASpanningTree);
            }
        }
        let total_weight = edges.iter().map(|e| e.weight).sum();
        Ok(Tree {
            vertices,
            terminal_count,
            edges,
            total_weight,
        })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn terminal_count(&self) -> usize {
        self.terminal_count
    }

    pub fn steiner_vertices(&self) -> &[Point] {
        &self.vertices[self.terminal_count..]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.touches(v)).count()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|e| match (e.u == v, e.v == v) {
                (true, _) => Some(e.v),
                (_, true) => Some(e.u),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }
}

/// Kruskal over candidate edges, which are sorted in place by the tie-break
/// order. Returns the accepted edges in acceptance order.
pub(crate) fn kruskal(n: usize, candidates: &mut [Edge]) -> Vec<Edge> {
    candidates.sort_unstable_by(Edge::tie_break_cmp);
    let mut dsu = DisjointSet::new(n);
    let mut out = Vec::with_capacity(n.saturating_sub(1));
    for e in candidates.iter() {
        if dsu.union(e.u, e.v).is_some() {
            out.push(*e);
            if out.len() + 1 == n {
                break;
            }
        }
    }
    out
}

pub(crate) fn delaunay_candidates(points: &[Point]) -> Result<Vec<Edge>> {
    Ok(delaunay_edges(points)?
        .into_iter()
        .map(|(a, b)| Edge::between(points, a, b))
        .collect())
}

/// Euclidean minimum spanning tree: Kruskal over the Delaunay edges.
///
/// Equal weights are ordered by `Edge::tie_break_cmp`, which makes the output
/// unique.
pub fn emst(points: &[Point]) -> Result<Tree> {
    let mut candidates = delaunay_candidates(points)?;
    let edges = kruskal(points.len(), &mut candidates);
    Tree::new(points.to_vec(), points.len(), edges)
}

/// MST over terminals plus extra Steiner vertices appended after them.
pub fn emst_with_steiner(terminals: &[Point], steiner: &[Point]) -> Result<Tree> {
    let mut all = terminals.to_vec();
    all.extend_from_slice(steiner);
    let mut candidates = delaunay_candidates(&all)?;
    let edges = kruskal(all.len(), &mut candidates);
    Tree::new(all, terminals.len(), edges)
}

/// MST of the vertices of `mst` plus `steiner`, appended after them.
///
/// Under the strict tie-break order every edge of the larger tree between
/// two old vertices already lies in `mst`, so Kruskal only needs those edges
/// and the ones incident to the new vertices.
pub(crate) fn extend_mst(mst: &Tree, steiner: &[Point]) -> Result<Tree> {
    let n = mst.vertices().len();
    let mut all = mst.vertices().to_vec();
    all.extend_from_slice(steiner);
    let mut candidates = mst.edges().to_vec();
    candidates.reserve(steiner.len() * (n + steiner.len()));
    for s in n..all.len() {
        candidates.extend((0..s).map(|a| Edge::between(&all, a, s)));
    }
    let edges = kruskal(all.len(), &mut candidates);
    Tree::new(all, mst.terminal_count(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(t: &Tree) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = t.edges().iter().map(Edge::key).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn collinear_path() {
        let pts = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(2.0, 0.0),
        ];
        let t = emst(&pts).unwrap();
        assert_eq!(pairs(&t), vec![(0, 1), (1, 2)]);
        assert_eq!(t.total_weight(), 2.0);
    }

    #[test]
    fn equilateral_tie_break_picks_smallest_pairs() {
        let h = 3f64.sqrt() / 2.0;
        let pts = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.5, h),
        ];
        let t = emst(&pts).unwrap();
        assert_eq!(t.edges().len(), 2);
        assert!((t.total_weight() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn exact_ties_resolve_lexicographically() {
        // Unit square: four sides of weight exactly 1.
        let pts = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ];
        let t = emst(&pts).unwrap();
        assert_eq!(pairs(&t), vec![(0, 1), (0, 3), (1, 2)]);
        assert_eq!(t.total_weight(), 3.0);
    }

    #[test]
    fn near_collinear_four_form_a_path() {
        let pts = [
            Point::new(0.489, 0.237),
            Point::new(1.865, -0.114),
            Point::new(3.26, 0.184),
            Point::new(4.75, -0.141),
        ];
        let t = emst(&pts).unwrap();
        assert_eq!(pairs(&t), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn tree_validation() {
        let pts = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(2.0, 0.0),
        ];
        let cyc = vec![Edge::between(&pts, 0, 1), Edge::between(&pts, 0, 1)];
        assert_eq!(
            Tree::new(pts.clone(), 3, cyc),
            Err(SteinerError::NotASpanningTree)
        );
        let short = vec![Edge::between(&pts, 0, 1)];
        assert!(Tree::new(pts, 3, short).is_err());
    }

    #[test]
    fn extending_the_mst_equals_a_fresh_mst() {
        use rand::Rng;
        let mut r = crate::random::rng(12);
        for trial in 0..60 {
            let n = r.gen_range(2..80);
            // Half the trials sit on a small lattice, so weights tie.
            let pts: Vec<Point> = if trial % 2 == 0 {
                crate::random::uniform_points(n, trial)
            } else {
                let mut v: Vec<Point> = Vec::new();
                while v.len() < n {
                    let p = Point::new(r.gen_range(0..9) as f64, r.gen_range(0..9) as f64);
                    if !v.contains(&p) {
                        v.push(p);
                    }
                }
                v
            };
            let extra: Vec<Point> = (0..r.gen_range(1..3))
                .map(|_| Point::new(r.gen_range(0.1..8.1), r.gen_range(0.1..8.1)))
                .collect();
            let fresh = emst_with_steiner(&pts, &extra).unwrap();
            let grown = extend_mst(&emst(&pts).unwrap(), &extra).unwrap();
            assert_eq!(pairs(&grown), pairs(&fresh), "trial {trial}");
            assert_eq!(grown.terminal_count(), n);
        }
    }
}
