//! Best single Steiner point on one or more constraint lines.
//!
//! Inserting a point `s` joined to a neighbour set `N` into `MST(P)` closes
//! one cycle per pair of neighbours; dropping the heaviest edge of each gives
//! `|MST(P ∪ {s})| = |MST(P)| + σ − Δ` where `σ` is the star length and `Δ`
//! the total weight of the distinct dropped edges. On a labelled interval
//! only the six nearest-in-cone terminals can be neighbours, so each interval
//! offers a constant number of subsets, each a 1-D convex minimization.

use rayon::prelude::*;

use crate::bottleneck::{emst_with_bottleneck, BottleneckTree};
use crate::error::{Result, SteinerError};
use crate::geometry::{distance, validate_points, Gamma, Point};
use crate::intervals::{labelled_intervals, labelled_intervals_par, LabelledInterval};
use crate::ksteiner::ForestCandidate;
use crate::minimize::minimize_on_interval;
use crate::tree::{extend_mst, Edge, Tree};

/// A candidate closer than this to a terminal is not a Steiner point.
pub const TERMINAL_CLEARANCE: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// A placement is adopted only when it saves strictly more than this.
    pub min_gain: f64,
    /// Evaluate intervals (and the per-cone envelopes) on the rayon pool.
    pub parallel: bool,
    /// Largest Steiner degree tried, counting Steiner neighbours. At most 6.
    pub max_steiner_degree: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            min_gain: 1e-9,
            parallel: false,
            max_steiner_degree: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub line: usize,
    pub interval: usize,
    pub t: f64,
    pub point: Point,
    /// Sorted terminal indices joined to the Steiner point.
    pub neighbors: Vec<usize>,
    pub sigma: f64,
    pub delta: f64,
    /// Dropped MST edges in increasing tie-broken weight order.
    pub removed: Vec<Edge>,
    pub savings: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Placement {
    /// The MST of the terminals is already optimal.
    None,
    Single(Candidate),
    Forest(ForestCandidate),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub interval_count: usize,
    /// Neighbour subsets (or forests) enumerated, pruned or not.
    pub candidates_evaluated: u64,
}

#[derive(Clone, Debug)]
pub struct Solution {
    /// Spanning tree on the terminals followed by the Steiner points,
    /// recomputed as the exact MST of that vertex set.
    pub tree: Tree,
    pub steiner_points: Vec<Point>,
    pub total_weight: f64,
    pub baseline_mst_weight: f64,
    pub savings: f64,
    /// Baseline MST edges absent from `tree`.
    pub removed_mst_edges: Vec<Edge>,
    pub placement: Placement,
    pub stats: SolveStats,
}

/// Terminals with their MST and bottleneck structure, shared across lines.
#[derive(Clone, Debug)]
pub struct Prepared {
    points: Vec<Point>,
    mst: Tree,
    aux: BottleneckTree,
}

impl Prepared {
    pub fn new(points: &[Point]) -> Result<Self> {
        if points.len() < 2 {
            return Err(SteinerError::TooFewPoints {
                required: 2,
                got: points.len(),
            });
        }
        validate_points(points)?;
        let (mst, aux) = emst_with_bottleneck(points)?;
        Ok(Prepared {
            points: points.to_vec(),
            mst,
            aux,
        })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn mst(&self) -> &Tree {
        &self.mst
    }

    pub fn bottleneck(&self) -> &BottleneckTree {
        &self.aux
    }

    pub(crate) fn intervals(&self, gamma: &Gamma, parallel: bool) -> Vec<LabelledInterval> {
        if parallel {
            labelled_intervals_par(&self.points, gamma)
        } else {
            labelled_intervals(&self.points, gamma)
        }
    }

    /// Solution consisting of the given Steiner points, with the tree
    /// recomputed as the MST over terminals and Steiner points.
    pub(crate) fn finish(
        &self,
        steiner: Vec<Point>,
        placement: Placement,
        stats: SolveStats,
    ) -> Result<Solution> {
        let baseline = self.mst.total_weight();
        if steiner.is_empty() {
            return Ok(self.plain(stats));
        }
        let tree = extend_mst(&self.mst, &steiner)?;
        let total = tree.total_weight();
        let mut kept: Vec<(usize, usize)> = tree.edges().iter().map(Edge::key).collect();
        kept.sort_unstable();
        let removed = self
            .mst
            .edges()
            .iter()
            .filter(|e| kept.binary_search(&e.key()).is_err())
            .copied()
            .collect();
        Ok(Solution {
            tree,
            steiner_points: steiner,
            total_weight: total,
            baseline_mst_weight: baseline,
            savings: baseline - total,
            removed_mst_edges: removed,
            placement,
            stats,
        })
    }

    pub(crate) fn plain(&self, stats: SolveStats) -> Solution {
        let w = self.mst.total_weight();
        Solution {
            tree: self.mst.clone(),
            steiner_points: Vec::new(),
            total_weight: w,
            baseline_mst_weight: w,
            savings: 0.0,
            removed_mst_edges: Vec::new(),
            placement: Placement::None,
            stats,
        }
    }
}

/// Distinct merge nodes (bottleneck edges) over all pairs of `n`, sorted.
pub(crate) fn pair_merge_nodes(aux: &BottleneckTree, n: &[usize]) -> Vec<usize> {
    let mut nodes = Vec::with_capacity(n.len() * (n.len() - 1) / 2);
    for (i, &u) in n.iter().enumerate() {
        for &v in &n[i + 1..] {
            nodes.push(aux.merge_node(u, v));
        }
    }
    nodes.sort_unstable();
    nodes.dedup();
    nodes
}

/// Total weight and identity of the MST edges displaced by a star on `n`.
pub fn savings_delta(aux: &BottleneckTree, n: &[usize]) -> Result<(f64, Vec<Edge>)> {
    if !(3..=4).contains(&n.len()) {
        return Err(SteinerError::BadNeighborCount(n.len()));
    }
    for (i, &u) in n.iter().enumerate() {
        if u >= aux.vertex_count() {
            return Err(SteinerError::VertexOutOfBounds(u));
        }
        if n[..i].contains(&u) {
            return Err(SteinerError::SameVertex);
        }
    }
    let removed: Vec<Edge> = pair_merge_nodes(aux, n)
        .into_iter()
        .map(|node| aux.node_edge(node))
        .collect();
    debug_assert_eq!(removed.len(), n.len() - 1);
    Ok((removed.iter().map(|e| e.weight).sum(), removed))
}

/// Calls `f` with every subset of `items` whose size lies in `sizes`, in a
/// fixed order.
pub(crate) fn for_each_subset(
    items: &[usize],
    sizes: std::ops::RangeInclusive<usize>,
    mut f: impl FnMut(&[usize]),
) {
    let m = items.len();
    let mut buf = Vec::with_capacity(m);
    for size in sizes {
        if size > m {
            break;
        }
        // Lexicographic index combinations.
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            buf.clear();
            buf.extend(idx.iter().map(|&i| items[i]));
            f(&buf);
            let Some(pos) = (0..size).rev().find(|&p| idx[p] != p + m - size) else {
                break;
            };
            idx[pos] += 1;
            for q in pos + 1..size {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }
}

struct LineSearch<'a> {
    prep: &'a Prepared,
    gamma: &'a Gamma,
    line: usize,
    intervals: &'a [LabelledInterval],
    cfg: &'a SolverConfig,
}

impl LineSearch<'_> {
    fn near_terminal(&self, k: usize, s: Point) -> bool {
        let lo = k.saturating_sub(1);
        let hi = (k + 1).min(self.intervals.len() - 1);
        self.intervals[lo..=hi].iter().any(|iv| {
            iv.candidates()
                .iter()
                .any(|&a| distance(self.prep.points[a], s) < TERMINAL_CLEARANCE)
        })
    }

    /// Best candidate on interval `k` saving strictly more than `floor`.
    fn interval(&self, k: usize, mut floor: f64) -> (Option<Candidate>, u64) {
        let iv = &self.intervals[k];
        let labels = iv.candidates();
        let aux = &self.prep.aux;
        let pts = &self.prep.points;
        let max_deg = self.cfg.max_steiner_degree.min(6);
        let mut best: Option<Candidate> = None;
        let mut evaluated = 0u64;
        let mut targets = Vec::with_capacity(6);
        for_each_subset(&labels, 3..=max_deg, |n| {
            evaluated += 1;
            let nodes = pair_merge_nodes(aux, n);
            let delta: f64 = nodes.iter().map(|&x| aux.node_edge(x).weight).sum();
            let sigma_lb: f64 = n
                .iter()
                .map(|&a| self.gamma.distance_to_span(pts[a], iv.t_lo, iv.t_hi))
                .sum();
            if delta - sigma_lb <= floor {
                return;
            }
            targets.clear();
            targets.extend(n.iter().map(|&a| pts[a]));
            let (t, sigma) = minimize_on_interval(self.gamma, iv.range(), &targets);
            let savings = delta - sigma;
            if savings <= floor {
                return;
            }
            let point = self.gamma.at(t);
            if self.near_terminal(k, point) {
                return;
            }
            floor = savings;
            best = Some(Candidate {
                line: self.line,
                interval: k,
                t,
                point,
                neighbors: n.to_vec(),
                sigma,
                delta,
                removed: nodes.iter().map(|&x| aux.node_edge(x)).collect(),
                savings,
            });
        });
        (best, evaluated)
    }

    fn run(&self) -> (Option<Candidate>, u64) {
        let floor = self.cfg.min_gain;
        if self.cfg.parallel {
            let results: Vec<(Option<Candidate>, u64)> = (0..self.intervals.len())
                .into_par_iter()
                .map(|k| self.interval(k, floor))
                .collect();
            let evaluated = results.iter().map(|r| r.1).sum();
            let best =
                results
                    .into_iter()
                    .filter_map(|r| r.0)
                    .fold(None, |acc: Option<Candidate>, c| match acc {
                        Some(a) if a.savings >= c.savings => Some(a),
                        _ => Some(c),
                    });
            (best, evaluated)
        } else {
            let mut best: Option<Candidate> = None;
            let mut evaluated = 0;
            for k in 0..self.intervals.len() {
                let floor = best.as_ref().map_or(floor, |b| b.savings);
                let (c, e) = self.interval(k, floor);
                evaluated += e;
                if c.is_some() {
                    best = c;
                }
            }
            (best, evaluated)
        }
    }
}

/// Best single-Steiner candidate across `lines`; ties go to the lowest line,
/// then the lowest interval, then the first subset enumerated.
pub(crate) fn best_single(
    prep: &Prepared,
    lines: &[Gamma],
    cfg: &SolverConfig,
) -> (Option<Candidate>, SolveStats) {
    let mut stats = SolveStats::default();
    let mut best: Option<Candidate> = None;
    for (line, gamma) in lines.iter().enumerate() {
        let intervals = prep.intervals(gamma, cfg.parallel);
        stats.interval_count += intervals.len();
        let search = LineSearch {
            prep,
            gamma,
            line,
            intervals: &intervals,
            cfg,
        };
        let (c, e) = search.run();
        stats.candidates_evaluated += e;
        if let Some(c) = c {
            if best.as_ref().is_none_or(|b| c.savings > b.savings) {
                best = Some(c);
            }
        }
    }
    (best, stats)
}

pub fn solve_prepared(prep: &Prepared, lines: &[Gamma], cfg: &SolverConfig) -> Result<Solution> {
    if lines.is_empty() {
        return Err(SteinerError::NoConstraints);
    }
    let (best, stats) = best_single(prep, lines, cfg);
    match best {
        Some(c) => {
            let s = c.point;
            prep.finish(vec![s], Placement::Single(c), stats)
        }
        None => Ok(prep.plain(stats)),
    }
}

pub fn solve_one_line(points: &[Point], gamma: &Gamma, cfg: &SolverConfig) -> Result<Solution> {
    solve_multi_lines(points, std::slice::from_ref(gamma), cfg)
}

pub fn solve_multi_lines(
    points: &[Point],
    lines: &[Gamma],
    cfg: &SolverConfig,
) -> Result<Solution> {
    if lines.is_empty() {
        return Err(SteinerError::NoConstraints);
    }
    let prep = Prepared::new(points)?;
    solve_prepared(&prep, lines, cfg)
}
