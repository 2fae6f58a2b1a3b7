//! Longest-edge auxiliary tree over a spanning tree.
//!
//! Replaying Kruskal on the tree's edges in increasing (tie-broken) order and
//! recording every merge as a new internal node gives a binary tree whose
//! leaves are the vertices; the LCA of two leaves is the heaviest edge on
//! their tree path. Listing the leaves so that every merge concatenates two
//! lists, that LCA is the latest merge between the two leaves' positions, a
//! range maximum over `n - 1` gaps.
//!
//! A second LCA structure over the tree rooted at vertex 0, built on first
//! use, answers "is edge e on the path y–z" with five LCA lookups.

use std::sync::OnceLock;

use crate::dsu::DisjointSet;
use crate::error::{Result, SteinerError};
use crate::geometry::Point;
use crate::lca::{Lca, RangeMax};
use crate::tree::{delaunay_candidates, kruskal, Edge, Tree};

#[derive(Clone, Debug)]
pub struct BottleneckTree {
    n: usize,
    /// Tree edges in merge order; internal node `n + k` is `merged[k]`.
    merged: Vec<Edge>,
    /// Position of each vertex in the merge-concatenated leaf order.
    pos: Vec<u32>,
    /// Merge rank joining the leaves at positions `i` and `i + 1`.
    gaps: RangeMax,
    rooted: OnceLock<Rooted>,
}

#[derive(Clone, Debug)]
struct Rooted {
    parent: Vec<usize>,
    lca: Lca,
}

impl Rooted {
    fn new(n: usize, edges: &[Edge]) -> Self {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        let mut parent = vec![usize::MAX; n];
        parent[0] = 0;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    stack.push(y);
                }
            }
        }
        let lca = Lca::from_parents(&parent, 0);
        Rooted { parent, lca }
    }
}

impl BottleneckTree {
    /// `edges` must already be in increasing tie-break order and form a
    /// spanning tree on `n` vertices.
    fn from_sorted(n: usize, merged: Vec<Edge>) -> Result<Self> {
        if n == 0 || merged.len() + 1 != n {
            return Err(SteinerError::NotASpanningTree);
        }
        let mut dsu = DisjointSet::new(n);
        // Leaf list per component, kept at the component's root.
        let mut head: Vec<u32> = (0..n as u32).collect();
        let mut tail = head.clone();
        let mut next = vec![u32::MAX; n];
        let mut gap = vec![0u32; n];
        for (k, e) in merged.iter().enumerate() {
            if e.u >= n || e.v >= n {
                return Err(SteinerError::VertexOutOfBounds(e.u.max(e.v)));
            }
            let (ra, rb) = (dsu.find(e.u), dsu.find(e.v));
            let (ha, ta, hb, tb) = (head[ra], tail[ra], head[rb], tail[rb]);
            let root = dsu.union(ra, rb).ok_or(SteinerError::NotASpanningTree)?;
            next[ta as usize] = hb;
            gap[ta as usize] = k as u32;
            head[root] = ha;
            tail[root] = tb;
        }
        let mut pos = vec![0u32; n];
        let mut gaps = Vec::with_capacity(n - 1);
        let mut x = head[dsu.find(0)] as usize;
        for i in 0..n {
            pos[x] = i as u32;
            if i + 1 < n {
                gaps.push(gap[x]);
                x = next[x] as usize;
            }
        }
        Ok(BottleneckTree {
            n,
            merged,
            pos,
            gaps: RangeMax::new(gaps),
            rooted: OnceLock::new(),
        })
    }

    fn rooted(&self) -> &Rooted {
        self.rooted
            .get_or_init(|| Rooted::new(self.n, &self.merged))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Tree edges in merge (increasing tie-broken weight) order.
    pub fn edges(&self) -> &[Edge] {
        &self.merged
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(SteinerError::VertexOutOfBounds(v))
        }
    }

    /// Merge-tree node where `u` and `v` first become connected. Its rank
    /// `node - n` orders nodes by tie-broken weight.
    pub(crate) fn merge_node(&self, u: usize, v: usize) -> usize {
        debug_assert_ne!(u, v);
        let (a, b) = (self.pos[u] as usize, self.pos[v] as usize);
        let (l, r) = if a < b { (a, b) } else { (b, a) };
        self.n + self.gaps.max(l, r - 1) as usize
    }

    pub(crate) fn node_edge(&self, node: usize) -> Edge {
        self.merged[node - self.n]
    }

    /// Heaviest edge on the tree path between `u` and `v`.
    pub fn bottleneck_edge(&self, u: usize, v: usize) -> Result<Edge> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(SteinerError::SameVertex);
        }
        Ok(self.node_edge(self.merge_node(u, v)))
    }

    /// Whether tree edge `(a, b)` lies on the path between `y` and `z`.
    pub fn edge_on_path(&self, a: usize, b: usize, y: usize, z: usize) -> Result<bool> {
        for v in [a, b, y, z] {
            self.check_vertex(v)?;
        }
        let rooted = self.rooted();
        let is_edge = a != b && (rooted.parent[a] == b || rooted.parent[b] == a);
        if !is_edge {
            return Err(SteinerError::NotATreeEdge(a.min(b), a.max(b)));
        }
        if y == z {
            return Ok(false);
        }
        let lca = |p: usize, q: usize| rooted.lca.lca(p, q);
        let r = lca(y, z);
        if r == y || r == z {
            // One endpoint is an ancestor of the other: e is on the path iff
            // both of its endpoints sit between them.
            let (low, high) = if r == z { (y, z) } else { (z, y) };
            return Ok(lca(low, a) == a
                && lca(low, b) == b
                && lca(a, high) == high
                && lca(b, high) == high);
        }
        let on_side = |near: usize, far: usize| {
            lca(far, a) == r && lca(far, b) == r && lca(a, near) == a && lca(b, near) == b
        };
        Ok(on_side(z, y) || on_side(y, z))
    }
}

pub fn build_bottleneck_tree(tree: &Tree) -> Result<BottleneckTree> {
    let mut edges = tree.edges().to_vec();
    edges.sort_unstable_by(Edge::tie_break_cmp);
    BottleneckTree::from_sorted(tree.vertices().len(), edges)
}

/// EMST and its bottleneck structure from a single Kruskal pass.
pub fn emst_with_bottleneck(points: &[Point]) -> Result<(Tree, BottleneckTree)> {
    let mut candidates = delaunay_candidates(points)?;
    let accepted = kruskal(points.len(), &mut candidates);
    let tree = Tree::new(points.to_vec(), points.len(), accepted.clone())?;
    let aux = BottleneckTree::from_sorted(points.len(), accepted)?;
    Ok((tree, aux))
}
