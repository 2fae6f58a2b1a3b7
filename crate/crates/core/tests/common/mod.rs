#![allow(dead_code)]

use std::collections::VecDeque;

use rand::Rng;
use steiner_core::{Edge, Point, Tree};

/// Vertices along the tree path from `u` to `v`, by BFS.
pub fn tree_path(tree: &Tree, u: usize, v: usize) -> Vec<usize> {
    let n = tree.vertices().len();
    let mut adj = vec![Vec::new(); n];
    for e in tree.edges() {
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    let mut prev = vec![usize::MAX; n];
    prev[u] = u;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut path = vec![v];
    let mut x = v;
    while x != u {
        x = prev[x];
        path.push(x);
    }
    path.reverse();
    path
}

/// Heaviest edge on the tree path, ties broken by (weight, u, v).
pub fn path_max_edge(tree: &Tree, u: usize, v: usize) -> Edge {
    let pts = tree.vertices();
    tree_path(tree, u, v)
        .windows(2)
        .map(|w| Edge::between(pts, w[0], w[1]))
        .max_by(|a, b| a.tie_break_cmp(b))
        .unwrap()
}

pub fn path_contains_edge(tree: &Tree, a: usize, b: usize, y: usize, z: usize) -> bool {
    tree_path(tree, y, z)
        .windows(2)
        .any(|w| (w[0] == a && w[1] == b) || (w[0] == b && w[1] == a))
}

/// Whether `edges` connect all `n` vertices without a cycle.
pub fn is_spanning_tree(n: usize, edges: &[(usize, usize)]) -> bool {
    if edges.len() + 1 != n {
        return false;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

pub fn random_points<R: Rng>(rng: &mut R, n: usize) -> Vec<Point> {
    (0..n).map(|_| Point::new(rng.gen(), rng.gen())).collect()
}

/// Distinct points on a small integer lattice: many equal edge weights.
pub fn lattice_points<R: Rng>(rng: &mut R, n: usize, side: i32) -> Vec<Point> {
    let mut pts: Vec<(i32, i32)> = Vec::new();
    while pts.len() < n {
        let p = (rng.gen_range(0..side), rng.gen_range(0..side));
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts.into_iter()
        .map(|(x, y)| Point::new(x as f64, y as f64))
        .collect()
}

pub fn near_collinear_four() -> Vec<Point> {
    vec![
        Point::new(0.489, 0.237),
        Point::new(1.865, -0.114),
        Point::new(3.26, 0.184),
        Point::new(4.75, -0.141),
    ]
}

pub fn equilateral_at(x: f64) -> Vec<Point> {
    vec![
        Point::new(x, 0.0),
        Point::new(x + 1.0, 0.0),
        Point::new(x + 0.5, 3f64.sqrt() / 2.0),
    ]
}
