mod common;

use common::*;
use rand::seq::SliceRandom;
use rand::Rng;
use steiner_core::oracle::{forced_forest_mst, forced_star_mst, nearest_in_cone, prim_mst};
use steiner_core::random::{random_gamma, random_line, rng};
use steiner_core::*;

#[test]
fn emst_weight_matches_prim() {
    for seed in 0..10 {
        let pts = random_points(&mut rng(seed), 200);
        let fast = emst(&pts).unwrap().total_weight();
        let slow = prim_mst(&pts).total_weight();
        assert!((fast - slow).abs() < 1e-9, "seed {seed}");
    }
}

#[test]
fn near_collinear_four_mst_is_a_path() {
    let t = emst(&near_collinear_four()).unwrap();
    let keys: Vec<_> = t.edges().iter().map(Edge::key).collect();
    assert_eq!(keys, vec![(0, 1), (1, 2), (2, 3)]);
    assert!((t.total_weight() - prim_mst(&near_collinear_four()).total_weight()).abs() < 1e-12);
}

#[test]
fn bottleneck_all_pairs_on_random_emst() {
    let pts = random_points(&mut rng(100), 100);
    let (tree, aux) = emst_with_bottleneck(&pts).unwrap();
    for u in 0..100 {
        for v in u + 1..100 {
            let e = aux.bottleneck_edge(u, v).unwrap();
            assert_eq!(e, path_max_edge(&tree, u, v), "{u} {v}");
        }
    }
}

#[test]
fn edge_on_path_matches_path_enumeration() {
    let mut r = rng(7);
    for _ in 0..20 {
        let n = r.gen_range(2..80);
        let pts = random_points(&mut r, n);
        let (tree, aux) = emst_with_bottleneck(&pts).unwrap();
        for _ in 0..500 {
            let e = tree.edges()[r.gen_range(0..tree.edges().len())];
            let (y, z) = (r.gen_range(0..n), r.gen_range(0..n));
            let (a, b) = if r.gen() { (e.u, e.v) } else { (e.v, e.u) };
            assert_eq!(
                aux.edge_on_path(a, b, y, z).unwrap(),
                path_contains_edge(&tree, a, b, y, z)
            );
        }
    }
}

/// Path b–d–a–e–c with weights 3, 5, 4, 2 on the x-axis.
fn path_topology() -> (Tree, [usize; 5]) {
    // Indices: a=0, b=1, c=2, d=3, e=4.
    let pts = vec![
        Point::new(8.0, 0.0),
        Point::new(0.0, 0.0),
        Point::new(14.0, 0.0),
        Point::new(3.0, 0.0),
        Point::new(12.0, 0.0),
    ];
    let edges = vec![
        Edge::between(&pts, 1, 3),
        Edge::between(&pts, 3, 0),
        Edge::between(&pts, 0, 4),
        Edge::between(&pts, 4, 2),
    ];
    (Tree::new(pts, 5, edges).unwrap(), [0, 1, 2, 3, 4])
}

#[test]
fn path_topology_delta() {
    let (tree, [a, b, c, d, e]) = path_topology();
    let aux = build_bottleneck_tree(&tree).unwrap();
    let mut n = vec![a, b, c];
    n.sort_unstable();
    let (delta, removed) = savings_delta(&aux, &n).unwrap();
    assert_eq!(delta, 9.0);
    let mut keys: Vec<_> = removed.iter().map(Edge::key).collect();
    keys.sort_unstable();
    let mut want = vec![(a.min(d), a.max(d)), (a.min(e), a.max(e))];
    want.sort_unstable();
    assert_eq!(keys, want);

    // Exhaustive search over removal sets of size 2 that leave a tree.
    let s = Point::new(7.0, 2.0);
    let sigma: f64 = n.iter().map(|&x| distance(tree.vertices()[x], s)).sum();
    let oracle = forced_star_mst(&tree, s, &n);
    assert!((oracle - (tree.total_weight() + sigma - 9.0)).abs() < 1e-12);
    let mut best = f64::INFINITY;
    let m = tree.edges().len();
    for i in 0..m {
        for j in i + 1..m {
            let mut edges: Vec<(usize, usize)> = tree
                .edges()
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i && k != j)
                .map(|(_, e)| e.key())
                .collect();
            edges.extend(n.iter().map(|&x| (x, 5)));
            if is_spanning_tree(6, &edges) {
                let removed = tree.edges()[i].weight + tree.edges()[j].weight;
                best = best.min(tree.total_weight() + sigma - removed);
            }
        }
    }
    assert!((best - oracle).abs() < 1e-12);
}

#[test]
fn savings_delta_matches_forced_star_on_all_subsets() {
    let mut r = rng(41);
    for _ in 0..6 {
        let n = r.gen_range(5..=30);
        let pts = random_points(&mut r, n);
        let (tree, aux) = emst_with_bottleneck(&pts).unwrap();
        let s = Point::new(r.gen(), r.gen());
        let all: Vec<usize> = (0..n).collect();
        for size in 3..=4 {
            let mut subsets = Vec::new();
            combinations(&all, size, &mut Vec::new(), &mut subsets);
            for nb in subsets {
                let (delta, removed) = savings_delta(&aux, &nb).unwrap();
                assert_eq!(removed.len(), nb.len() - 1);
                let sigma: f64 = nb.iter().map(|&x| distance(pts[x], s)).sum();
                let oracle = forced_star_mst(&tree, s, &nb);
                assert!(
                    (tree.total_weight() + sigma - delta - oracle).abs() < 1e-9,
                    "{nb:?}"
                );
            }
        }
    }
}

fn combinations(items: &[usize], k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    let start = cur
        .last()
        .map_or(0, |&l| items.iter().position(|&x| x == l).unwrap() + 1);
    for i in start..items.len() {
        cur.push(items[i]);
        combinations(items, k, cur, out);
        cur.pop();
    }
}

fn random_forest<R: Rng>(r: &mut R, n: usize) -> ViableForest {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(r);
    if r.gen_bool(0.3) {
        let size = r.gen_range(3..=4);
        let mut n1 = idx[..size].to_vec();
        n1.sort_unstable();
        return ViableForest {
            neighbors: vec![n1],
            steiner_edge: false,
        };
    }
    let edge = r.gen();
    let (lo, hi) = if edge { (2, 3) } else { (3, 4) };
    let (s1, s2) = (r.gen_range(lo..=hi), r.gen_range(lo..=hi));
    let mut n1 = idx[..s1].to_vec();
    let mut n2 = idx[s1..s1 + s2].to_vec();
    if !edge && r.gen_bool(0.3) {
        n2[0] = n1[0];
    }
    n1.sort_unstable();
    n2.sort_unstable();
    ViableForest {
        neighbors: vec![n1, n2],
        steiner_edge: edge,
    }
}

fn forced_edges(f: &ViableForest, n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (s, nb) in f.neighbors.iter().enumerate() {
        out.extend(nb.iter().map(|&a| (a, n + s)));
    }
    if f.steiner_edge {
        out.push((n, n + 1));
    }
    out
}

#[test]
fn min_f_fixed_tree_matches_forced_kruskal() {
    let mut r = rng(59);
    for trial in 0..1000 {
        let n = r.gen_range(8..=30);
        let pts = if trial % 4 == 0 {
            lattice_points(&mut r, n, 7)
        } else {
            random_points(&mut r, n)
        };
        let (tree, aux) = emst_with_bottleneck(&pts).unwrap();
        let f = random_forest(&mut r, n);
        let steiner: Vec<Point> = (0..f.steiner_count())
            .map(|_| Point::new(r.gen_range(0.0..7.0), r.gen_range(0.0..7.0)))
            .collect();
        let (w, removed) = min_f_fixed_tree(&tree, &aux, &f, &steiner).unwrap();
        let oracle = forced_forest_mst(&tree, &steiner, &forced_edges(&f, n)).unwrap();
        assert!((w - oracle).abs() < 1e-9, "trial {trial}: {w} vs {oracle}");
        // Kept MST edges plus the forest form a spanning tree.
        let mut edges: Vec<(usize, usize)> = tree
            .edges()
            .iter()
            .filter(|e| !removed.contains(e))
            .map(Edge::key)
            .collect();
        edges.extend(forced_edges(&f, n));
        assert!(
            is_spanning_tree(n + f.steiner_count(), &edges),
            "trial {trial}"
        );
    }
}

#[test]
fn far_clusters_save_independently() {
    let mut pts = equilateral_at(0.0);
    pts.extend(equilateral_at(100.0));
    let (tree, aux) = emst_with_bottleneck(&pts).unwrap();
    let s1 = Point::new(0.5, 3f64.sqrt() / 6.0);
    let s2 = Point::new(100.5, 3f64.sqrt() / 6.0);
    let both = ViableForest {
        neighbors: vec![vec![0, 1, 2], vec![3, 4, 5]],
        steiner_edge: false,
    };
    let (w, _) = min_f_fixed_tree(&tree, &aux, &both, &[s1, s2]).unwrap();
    let saving = 2.0 - 3f64.sqrt();
    assert!((tree.total_weight() - w - 2.0 * saving).abs() < 1e-12);
    let oracle = forced_forest_mst(&tree, &[s1, s2], &forced_edges(&both, 6)).unwrap();
    assert!((w - oracle).abs() < 1e-12);
}

#[test]
fn overlapping_bottleneck_paths_are_counted_once() {
    // Two stars on a path whose bottleneck paths share the heaviest edge.
    let pts: Vec<Point> = [0.0, 1.0, 2.0, 10.0, 11.0, 12.0]
        .iter()
        .map(|&x| Point::new(x, 0.0))
        .collect();
    let (tree, aux) = emst_with_bottleneck(&pts).unwrap();
    assert!(aux.edge_on_path(2, 3, 0, 4).unwrap());
    assert!(aux.edge_on_path(2, 3, 1, 5).unwrap());
    let f = ViableForest {
        neighbors: vec![vec![0, 1, 4], vec![2, 3, 5]],
        steiner_edge: false,
    };
    let s = [Point::new(4.0, 1.0), Point::new(8.0, -1.0)];
    let (w, removed) = min_f_fixed_tree(&tree, &aux, &f, &s).unwrap();
    let oracle = forced_forest_mst(&tree, &s, &forced_edges(&f, 6)).unwrap();
    assert!((w - oracle).abs() < 1e-12);
    assert_eq!(removed.iter().filter(|e| e.key() == (2, 3)).count(), 1);
    assert_eq!(removed.len(), 4);
}

#[test]
fn interval_labels_match_nearest_in_cone() {
    let mut r = rng(71);
    for kind in [GammaKind::Line, GammaKind::Ray, GammaKind::Segment] {
        for _ in 0..5 {
            let pts = random_points(&mut r, 40);
            let g = random_gamma(&mut r, kind);
            let iv = labelled_intervals(&pts, &g);
            let range = g.range();
            assert_eq!(iv.first().unwrap().t_lo, range.lo);
            assert_eq!(iv.last().unwrap().t_hi, range.hi);
            for k in &iv {
                let t = if k.t_lo.is_finite() && k.t_hi.is_finite() {
                    0.5 * (k.t_lo + k.t_hi)
                } else if k.t_lo.is_finite() {
                    k.t_lo + 1.0
                } else {
                    k.t_hi - 1.0
                };
                for c in ConeIndex::ALL {
                    assert_eq!(k.label(c), nearest_in_cone(&pts, g.at(t), c));
                }
            }
        }
    }
}

#[test]
fn multi_line_is_min_of_single_lines() {
    let mut r = rng(83);
    let cfg = SolverConfig::default();
    for _ in 0..15 {
        let n = r.gen_range(5..30);
        let pts = random_points(&mut r, n);
        let lines: Vec<Gamma> = (0..3).map(|_| random_line(&mut r)).collect();
        let multi = solve_multi_lines(&pts, &lines, &cfg).unwrap();
        let best = lines
            .iter()
            .map(|g| solve_one_line(&pts, g, &cfg).unwrap().total_weight)
            .fold(f64::INFINITY, f64::min);
        assert_eq!(multi.total_weight, best);
        // Monotone in the set of lines.
        let fewer = solve_multi_lines(&pts, &lines[..2], &cfg).unwrap();
        assert!(multi.total_weight <= fewer.total_weight);
        // k = 1 is the multi-line solver.
        let k1 = solve_k(&pts, &lines, 1, &cfg).unwrap();
        assert_eq!(k1.total_weight, multi.total_weight);
        assert_eq!(k1.steiner_points, multi.steiner_points);
    }
}

#[test]
fn unit_square_uses_a_joined_pair() {
    let square = [
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(0.0, 1.0),
        Point::new(1.0, 1.0),
    ];
    let mid = Gamma::line(Point::new(0.0, 0.5), Point::new(1.0, 0.0)).unwrap();
    let sol = solve_k(&square, &[mid], 2, &SolverConfig::default()).unwrap();
    let Placement::Forest(f) = &sol.placement else {
        panic!("expected a two-point forest, got {:?}", sol.placement);
    };
    assert!(f.forest.steiner_edge);
    assert!((sol.total_weight - (1.0 + 3f64.sqrt())).abs() < 1e-8);
    let mut xs: Vec<f64> = sol.steiner_points.iter().map(|p| p.x).collect();
    xs.sort_by(f64::total_cmp);
    let off = 0.5 / 3f64.sqrt();
    assert!((xs[0] - off).abs() < 1e-6 && (xs[1] - (1.0 - off)).abs() < 1e-6);
}

#[test]
fn perturbed_squares_match_pair_grid() {
    use steiner_core::geometry::search_window;
    use steiner_core::oracle::prim_weight_with;
    let mut r = rng(77);
    let cfg = SolverConfig::default();
    let mut joined = 0;
    for _ in 0..12 {
        let mut pts: Vec<Point> = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]
            .iter()
            .map(|&(x, y)| Point::new(x + r.gen_range(-0.1..0.1), y + r.gen_range(-0.1..0.1)))
            .collect();
        pts.push(Point::new(r.gen_range(1.6..2.0), r.gen_range(0.0..1.0)));
        let ang: f64 = r.gen_range(-0.15..0.15);
        let g = Gamma::line(Point::new(0.5, 0.5), Point::new(ang.cos(), ang.sin())).unwrap();
        let sol = solve_k(&pts, &[g], 2, &cfg).unwrap();
        joined += usize::from(sol.steiner_points.len() == 2);

        let w = search_window(&pts, &g);
        let m = 250;
        let ts: Vec<Point> = (0..m)
            .map(|k| g.at(w.lo + (w.hi - w.lo) * k as f64 / (m - 1) as f64))
            .collect();
        let mut grid = f64::INFINITY;
        for (i, &p) in ts.iter().enumerate() {
            for &q in &ts[i..] {
                grid = grid.min(prim_weight_with(&pts, &[p, q]));
            }
        }
        assert!(
            sol.total_weight <= grid + 1e-5,
            "{} vs {grid}",
            sol.total_weight
        );
        let one = solve_k(&pts, &[g], 1, &cfg).unwrap();
        assert!(sol.total_weight <= one.total_weight + 1e-9);
    }
    assert!(joined >= 6, "only {joined} two-point solutions");
}
