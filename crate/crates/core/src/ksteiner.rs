//! Up to two Steiner points, each on its own constraint line.
//!
//! Every choice (with repetition) of one or two labelled intervals, across
//! all lines, fixes the possible Steiner neighbours. For each admissible
//! forest `F` joining Steiner nodes to those terminals (and possibly to each
//! other) the positions are found by convex minimization, and the cheapest
//! spanning tree containing `F` is `|MST(P)| + |F| − Δ(F)`, where `Δ(F)`
//! depends only on which terminals `F` connects, never on where the Steiner
//! points sit.

use rayon::prelude::*;

use crate::bottleneck::BottleneckTree;
use crate::dsu::DisjointSet;
use crate::error::{Result, SteinerError};
use crate::geometry::{distance, Gamma, ParamRange, Point};
use crate::intervals::LabelledInterval;
use crate::minimize::minimize_on_interval;
use crate::steiner1::{
    best_single, for_each_subset, Placement, Prepared, Solution, SolverConfig, TERMINAL_CLEARANCE,
};
use crate::tree::{Edge, Tree};

const MAX_SWEEPS: usize = 200;
const SWEEP_TOL: f64 = 1e-10;

/// Neighbour sets of one or two Steiner nodes; terminals are leaves except
/// for at most one terminal shared by two unjoined nodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ViableForest {
    /// Sorted terminal neighbours per Steiner node.
    pub neighbors: Vec<Vec<usize>>,
    /// Whether the two Steiner nodes are adjacent.
    pub steiner_edge: bool,
}

impl ViableForest {
    pub fn steiner_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn degree(&self, s: usize) -> usize {
        self.neighbors[s].len() + usize::from(self.steiner_edge)
    }

    /// Sorted, deduplicated terminals touched by the forest.
    pub fn leaves(&self) -> Vec<usize> {
        let mut a: Vec<usize> = self.neighbors.iter().flatten().copied().collect();
        a.sort_unstable();
        a.dedup();
        a
    }

    fn validate(&self) -> Result<()> {
        match self.neighbors.len() {
            1 if self.steiner_edge => {
                Err(SteinerError::InvalidForest("edge needs two Steiner nodes"))
            }
            1 | 2 => {
                let shared = shared_count(
                    &self.neighbors[0],
                    self.neighbors.get(1).map_or(&[][..], |v| v),
                );
                if shared > usize::from(!self.steiner_edge) {
                    Err(SteinerError::InvalidForest(
                        "Steiner nodes and terminals form a cycle",
                    ))
                } else {
                    Ok(())
                }
            }
            k => Err(SteinerError::UnsupportedK(k)),
        }
    }
}

fn shared_count(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| b.contains(x)).count()
}

/// Calls `f(n1, n2, steiner_edge)` for every two-node forest over the label
/// sets, with Steiner degrees in `3..=max_degree`.
fn for_each_pair_forest(
    s1: &[usize],
    s2: &[usize],
    max_degree: usize,
    mut f: impl FnMut(&[usize], &[usize], bool),
) {
    let max_degree = max_degree.min(6);
    let mut lists: [Vec<Vec<usize>>; 2] = Default::default();
    for (side, set) in [s1, s2].into_iter().enumerate() {
        for_each_subset(set, 2..=max_degree, |n| lists[side].push(n.to_vec()));
    }
    for n1 in &lists[0] {
        for n2 in &lists[1] {
            let shared = shared_count(n1, n2);
            if n1.len() >= 3 && n2.len() >= 3 && shared <= 1 {
                f(n1, n2, false);
            }
            if n1.len() < max_degree && n2.len() < max_degree && shared == 0 {
                f(n1, n2, true);
            }
        }
    }
}

/// Every viable forest over one or two label sets.
pub fn enumerate_topologies(
    label_sets: &[Vec<usize>],
    max_degree: usize,
) -> Result<Vec<ViableForest>> {
    let mut out = Vec::new();
    match label_sets {
        [s] => for_each_subset(s, 3..=max_degree.min(6), |n| {
            out.push(ViableForest {
                neighbors: vec![n.to_vec()],
                steiner_edge: false,
            })
        }),
        [s1, s2] => for_each_pair_forest(s1, s2, max_degree, |n1, n2, e| {
            out.push(ViableForest {
                neighbors: vec![n1.to_vec(), n2.to_vec()],
                steiner_edge: e,
            })
        }),
        _ => return Err(SteinerError::UnsupportedK(label_sets.len())),
    }
    Ok(out)
}

/// Embedded Steiner positions for a fixed forest.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedTopologySolution {
    pub params: Vec<f64>,
    pub points: Vec<Point>,
    /// Total length of the forest's edges.
    pub length: f64,
}

/// Where each Steiner node may move.
#[derive(Clone, Copy, Debug)]
pub struct Slot<'a> {
    pub gamma: &'a Gamma,
    pub range: ParamRange,
}

fn forest_length(n1: &[Point], n2: &[Point], edge: bool, slots: &[Slot], t: (f64, f64)) -> f64 {
    // Hot loop of the pair search; plain square roots instead of `hypot`.
    let d = |a: Point, b: Point| (a - b).norm_sq().sqrt();
    let (p1, p2) = (slots[0].gamma.at(t.0), slots[1].gamma.at(t.1));
    let mut len: f64 = n1.iter().map(|&a| d(a, p1)).sum();
    len += n2.iter().map(|&a| d(a, p2)).sum::<f64>();
    if edge {
        len += d(p1, p2);
    }
    len
}

/// Finite bracket for a slot: its range, or the span of `t` and the targets'
/// projections when the range is unbounded on that side.
fn finite_range(slot: &Slot, targets: &[Point], t: f64) -> ParamRange {
    let (mut lo, mut hi) = (slot.range.lo, slot.range.hi);
    if !lo.is_finite() || !hi.is_finite() {
        let proj = targets.iter().map(|&a| slot.gamma.project(a));
        let (cmin, cmax) = proj.fold((t, t), |(l, h), x| (l.min(x), h.max(x)));
        if !lo.is_finite() {
            lo = cmin.min(hi);
        }
        if !hi.is_finite() {
            hi = cmax.max(lo);
        }
    }
    ParamRange { lo, hi }
}

/// Each star placed on its own: `(t1, t2, σ1 + σ2)`. Exact without the
/// Steiner edge and a lower bound with it.
fn separate_stars(n1: &[Point], n2: &[Point], slots: &[Slot]) -> (f64, f64, f64) {
    let (t1, s1) = minimize_on_interval(slots[0].gamma, slots[0].range, n1);
    let (t2, s2) = minimize_on_interval(slots[1].gamma, slots[1].range, n2);
    (t1, t2, s1 + s2)
}

/// Joint optimum of a forest, starting from [`separate_stars`].
fn solve_pair(
    n1: &[Point],
    n2: &[Point],
    edge: bool,
    slots: &[Slot],
    start: (f64, f64, f64),
) -> (f64, f64, f64) {
    let (t1, t2, _) = start;
    if !edge {
        return (t1, t2, forest_length(n1, n2, false, slots, (t1, t2)));
    }

    let (mut t1, mut t2) = (t1, t2);
    let mut buf1: Vec<Point> = n1.to_vec();
    let mut buf2: Vec<Point> = n2.to_vec();
    buf1.push(Point::new(0.0, 0.0));
    buf2.push(Point::new(0.0, 0.0));
    for _ in 0..MAX_SWEEPS {
        *buf1.last_mut().unwrap() = slots[1].gamma.at(t2);
        let (a, _) = minimize_on_interval(slots[0].gamma, slots[0].range, &buf1);
        *buf2.last_mut().unwrap() = slots[0].gamma.at(a);
        let (b, _) = minimize_on_interval(slots[1].gamma, slots[1].range, &buf2);
        let change = (a - t1).abs().max((b - t2).abs());
        t1 = a;
        t2 = b;
        if change < SWEEP_TOL {
            break;
        }
    }

    // Coordinate moves stall where the two points meet. A compass search
    // with diagonal moves removes remaining descent; an 11x11 grid at a few
    // scales certifies the result and restarts the compass on improvement.
    let mut all1 = n1.to_vec();
    all1.extend_from_slice(n2);
    let r1 = finite_range(&slots[0], &all1, t1);
    let r2 = finite_range(&slots[1], &all1, t2);
    let f = |a: f64, b: f64| forest_length(n1, n2, true, slots, (a, b));
    let mut best = f(t1, t2);
    let scale = (r1.width() + r2.width()).max(1.0);
    let try_move = |t1: &mut f64, t2: &mut f64, best: &mut f64, da: f64, db: f64| {
        let a = (*t1 + da).clamp(r1.lo, r1.hi);
        let b = (*t2 + db).clamp(r2.lo, r2.hi);
        let v = f(a, b);
        if v < *best {
            (*best, *t1, *t2) = (v, a, b);
            true
        } else {
            false
        }
    };
    const COMPASS: [(f64, f64); 8] = [
        (1.0, 0.0),
        (-1.0, 0.0),
        (0.0, 1.0),
        (0.0, -1.0),
        (1.0, 1.0),
        (-1.0, -1.0),
        (1.0, -1.0),
        (-1.0, 1.0),
    ];
    'polish: loop {
        let mut h = 0.05 * scale;
        while h > 1e-12 * scale {
            let moved = COMPASS
                .iter()
                .any(|&(i, j)| try_move(&mut t1, &mut t2, &mut best, h * i, h * j));
            if !moved {
                h *= 0.5;
            }
        }
        for g in [1e-3, 1e-6, 1e-9] {
            let h = g * scale;
            let mut improved = false;
            for i in -5i32..=5 {
                for j in -5i32..=5 {
                    if (i, j) != (0, 0) {
                        let (da, db) = (h * i as f64 / 5.0, h * j as f64 / 5.0);
                        improved |= try_move(&mut t1, &mut t2, &mut best, da, db);
                    }
                }
            }
            if improved {
                continue 'polish;
            }
        }
        break;
    }
    (t1, t2, best)
}

/// Optimal positions of the forest's Steiner nodes within their slots.
pub fn fixed_topology_solve(
    forest: &ViableForest,
    slots: &[Slot],
    terminals: &[Point],
) -> Result<FixedTopologySolution> {
    forest.validate()?;
    if slots.len() != forest.steiner_count() {
        return Err(SteinerError::InvalidForest("one slot per Steiner node"));
    }
    let coords = |n: &[usize]| -> Result<Vec<Point>> {
        n.iter()
            .map(|&a| {
                terminals
                    .get(a)
                    .copied()
                    .ok_or(SteinerError::VertexOutOfBounds(a))
            })
            .collect()
    };
    let n1 = coords(&forest.neighbors[0])?;
    if forest.steiner_count() == 1 {
        let (t, length) = minimize_on_interval(slots[0].gamma, slots[0].range, &n1);
        return Ok(FixedTopologySolution {
            params: vec![t],
            points: vec![slots[0].gamma.at(t)],
            length,
        });
    }
    let n2 = coords(&forest.neighbors[1])?;
    let start = separate_stars(&n1, &n2, slots);
    let (t1, t2, length) = solve_pair(&n1, &n2, forest.steiner_edge, slots, start);
    Ok(FixedTopologySolution {
        params: vec![t1, t2],
        points: vec![slots[0].gamma.at(t1), slots[1].gamma.at(t2)],
        length,
    })
}

/// Weight of the bottleneck edges that the forest makes redundant, as merge
/// nodes in increasing order.
///
/// Replaying Kruskal on `MST(P)` with each component of `F` pre-contracted
/// only ever rejects an edge whose merge node separates two leaves of `F`;
/// such a node is rejected exactly when those leaves are already connected.
fn forest_delta(aux: &BottleneckTree, n1: &[usize], n2: &[usize], edge: bool) -> (f64, Vec<usize>) {
    let mut leaves: Vec<usize> = n1.iter().chain(n2).copied().collect();
    leaves.sort_unstable();
    leaves.dedup();
    let local = |v: usize| leaves.binary_search(&v).unwrap();

    let mut dsu = DisjointSet::new(leaves.len());
    for n in [n1, n2] {
        for w in n.windows(2) {
            dsu.union(local(w[0]), local(w[1]));
        }
    }
    if edge && !n1.is_empty() && !n2.is_empty() {
        dsu.union(local(n1[0]), local(n2[0]));
    }

    let mut nodes: Vec<(usize, usize, usize)> = Vec::with_capacity(leaves.len() * leaves.len() / 2);
    for i in 0..leaves.len() {
        for j in i + 1..leaves.len() {
            nodes.push((aux.merge_node(leaves[i], leaves[j]), i, j));
        }
    }
    nodes.sort_unstable();
    nodes.dedup_by_key(|x| x.0);

    let mut delta = 0.0;
    let mut removed = Vec::new();
    for (node, i, j) in nodes {
        if dsu.union(i, j).is_none() {
            delta += aux.node_edge(node).weight;
            removed.push(node);
        }
    }
    (delta, removed)
}

/// Weight and displaced MST edges of the cheapest spanning tree on
/// `P ∪ steiner` whose Steiner adjacencies are exactly those of `forest`.
pub fn min_f_fixed_tree(
    mst: &Tree,
    aux: &BottleneckTree,
    forest: &ViableForest,
    steiner: &[Point],
) -> Result<(f64, Vec<Edge>)> {
    forest.validate()?;
    if steiner.len() != forest.steiner_count() {
        return Err(SteinerError::InvalidForest("one position per Steiner node"));
    }
    let terminals = &mst.vertices()[..mst.terminal_count()];
    let mut length = 0.0;
    for (s, n) in forest.neighbors.iter().enumerate() {
        for &a in n {
            let p = terminals.get(a).ok_or(SteinerError::VertexOutOfBounds(a))?;
            length += distance(*p, steiner[s]);
        }
    }
    if forest.steiner_edge {
        length += distance(steiner[0], steiner[1]);
    }
    let empty: &[usize] = &[];
    let n2 = forest.neighbors.get(1).map_or(empty, |v| v.as_slice());
    let (delta, nodes) = forest_delta(aux, &forest.neighbors[0], n2, forest.steiner_edge);
    let removed = nodes.into_iter().map(|x| aux.node_edge(x)).collect();
    Ok((mst.total_weight() + length - delta, removed))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SteinerSite {
    pub line: usize,
    pub interval: usize,
    pub t: f64,
    pub point: Point,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ForestCandidate {
    pub sites: Vec<SteinerSite>,
    pub forest: ViableForest,
    pub length: f64,
    pub delta: f64,
    pub removed: Vec<Edge>,
    pub savings: f64,
}

struct PairSearch<'a> {
    prep: &'a Prepared,
    lines: &'a [Gamma],
    /// (line, interval index, interval) over every line.
    slots: Vec<(usize, usize, &'a LabelledInterval)>,
    labels: Vec<Vec<usize>>,
    cfg: &'a SolverConfig,
}

impl PairSearch<'_> {
    fn clear_of_terminals(&self, s: Point) -> bool {
        self.prep
            .points()
            .iter()
            .all(|&p| distance(p, s) >= TERMINAL_CLEARANCE)
    }

    /// Best forest with its first node in slot `a`, second in any slot
    /// `b >= a`, saving strictly more than `floor`.
    fn first_slot(&self, a: usize, mut floor: f64) -> (Option<ForestCandidate>, u64) {
        let pts = self.prep.points();
        let aux = self.prep.bottleneck();
        let mut best = None;
        let mut evaluated = 0u64;
        let (la, ka, ia) = self.slots[a];
        for b in a..self.slots.len() {
            let (lb, kb, ib) = self.slots[b];
            let slots = [
                Slot {
                    gamma: &self.lines[la],
                    range: ia.range(),
                },
                Slot {
                    gamma: &self.lines[lb],
                    range: ib.range(),
                },
            ];
            for_each_pair_forest(
                &self.labels[a],
                &self.labels[b],
                self.cfg.max_steiner_degree,
                |n1, n2, edge| {
                    // Both orders of one pair of node choices are the same forest.
                    if a == b && n1 > n2 {
                        return;
                    }
                    evaluated += 1;
                    let (delta, nodes) = forest_delta(aux, n1, n2, edge);
                    let lb_len: f64 =
                        n1.iter()
                            .map(|&x| slots[0].gamma.distance_to_span(pts[x], ia.t_lo, ia.t_hi))
                            .chain(n2.iter().map(|&x| {
                                slots[1].gamma.distance_to_span(pts[x], ib.t_lo, ib.t_hi)
                            }))
                            .sum();
                    if delta - lb_len <= floor {
                        return;
                    }
                    let c1: Vec<Point> = n1.iter().map(|&x| pts[x]).collect();
                    let c2: Vec<Point> = n2.iter().map(|&x| pts[x]).collect();
                    let start = separate_stars(&c1, &c2, &slots);
                    if delta - start.2 <= floor {
                        return;
                    }
                    let (t1, t2, length) = solve_pair(&c1, &c2, edge, &slots, start);
                    let savings = delta - length;
                    if savings <= floor {
                        return;
                    }
                    let (p1, p2) = (slots[0].gamma.at(t1), slots[1].gamma.at(t2));
                    if distance(p1, p2) < TERMINAL_CLEARANCE
                        || !self.clear_of_terminals(p1)
                        || !self.clear_of_terminals(p2)
                    {
                        return;
                    }
                    floor = savings;
                    best = Some(ForestCandidate {
                        sites: vec![
                            SteinerSite {
                                line: la,
                                interval: ka,
                                t: t1,
                                point: p1,
                            },
                            SteinerSite {
                                line: lb,
                                interval: kb,
                                t: t2,
                                point: p2,
                            },
                        ],
                        forest: ViableForest {
                            neighbors: vec![n1.to_vec(), n2.to_vec()],
                            steiner_edge: edge,
                        },
                        length,
                        delta,
                        removed: nodes.iter().map(|&x| aux.node_edge(x)).collect(),
                        savings,
                    });
                },
            );
        }
        (best, evaluated)
    }

    fn run(&self, floor: f64) -> (Option<ForestCandidate>, u64) {
        if self.cfg.parallel {
            let results: Vec<_> = (0..self.slots.len())
                .into_par_iter()
                .map(|a| self.first_slot(a, floor))
                .collect();
            let evaluated = results.iter().map(|r| r.1).sum();
            let best = results.into_iter().filter_map(|r| r.0).fold(
                None,
                |acc: Option<ForestCandidate>, c| match acc {
                    Some(x) if x.savings >= c.savings => Some(x),
                    _ => Some(c),
                },
            );
            (best, evaluated)
        } else {
            let mut best: Option<ForestCandidate> = None;
            let mut evaluated = 0;
            for a in 0..self.slots.len() {
                let f = best.as_ref().map_or(floor, |b| b.savings);
                let (c, e) = self.first_slot(a, f);
                evaluated += e;
                if c.is_some() {
                    best = c;
                }
            }
            (best, evaluated)
        }
    }
}

pub fn solve_k_prepared(
    prep: &Prepared,
    lines: &[Gamma],
    k: usize,
    cfg: &SolverConfig,
) -> Result<Solution> {
    if !(1..=2).contains(&k) {
        return Err(SteinerError::UnsupportedK(k));
    }
    if lines.is_empty() {
        return Err(SteinerError::NoConstraints);
    }
    let (single, mut stats) = best_single(prep, lines, cfg);
    let one = match single {
        Some(c) => {
            let s = c.point;
            prep.finish(vec![s], Placement::Single(c), stats)?
        }
        None => prep.plain(stats),
    };
    if k == 1 {
        return Ok(one);
    }

    let intervals: Vec<Vec<LabelledInterval>> = lines
        .iter()
        .map(|g| prep.intervals(g, cfg.parallel))
        .collect();
    let slots: Vec<(usize, usize, &LabelledInterval)> = intervals
        .iter()
        .enumerate()
        .flat_map(|(l, ivs)| ivs.iter().enumerate().map(move |(k, iv)| (l, k, iv)))
        .collect();
    let labels = slots.iter().map(|s| s.2.candidates()).collect();
    let search = PairSearch {
        prep,
        lines,
        slots,
        labels,
        cfg,
    };
    // The pair must beat the single placement's predicted savings.
    let floor = match &one.placement {
        Placement::Single(c) => c.savings.max(cfg.min_gain),
        _ => cfg.min_gain,
    };
    let (pair, evaluated) = search.run(floor);
    stats.candidates_evaluated += evaluated;
    let one = Solution { stats, ..one };
    let Some(pair) = pair else {
        return Ok(one);
    };
    let pts = pair.sites.iter().map(|s| s.point).collect();
    let two = prep.finish(pts, Placement::Forest(pair), stats)?;
    // Recomputing the MST can only improve on either prediction; keep
    // whichever actual tree is lighter.
    Ok(if two.total_weight < one.total_weight {
        two
    } else {
        one
    })
}

pub fn solve_k(
    points: &[Point],
    lines: &[Gamma],
    k: usize,
    cfg: &SolverConfig,
) -> Result<Solution> {
    if !(1..=2).contains(&k) {
        return Err(SteinerError::UnsupportedK(k));
    }
    let prep = Prepared::new(points)?;
    solve_k_prepared(&prep, lines, k, cfg)
}
