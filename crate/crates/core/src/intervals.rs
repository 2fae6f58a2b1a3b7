//! Decomposition of a constraint line into labelled intervals.
//!
//! For each of the six cones, the nearest terminal seen from `γ(t)` inside
//! that cone changes only at finitely many parameters. Those changes are
//! exactly where the cone's oriented Voronoi diagram crosses the line; here
//! they are obtained directly as the lower envelope, over `t`, of the
//! terminals' distance functions, each restricted to the parameters from
//! which the terminal is visible in the cone.

use rayon::prelude::*;

use crate::envelope::{lower_envelope, Affine, Domain, Envelope};
use crate::geometry::{ConeIndex, Gamma, ParamRange, Point};

/// A maximal parameter range on which all six nearest-in-cone terminals are
/// constant.
#[derive(Clone, Debug, PartialEq)]
pub struct LabelledInterval {
    pub t_lo: f64,
    pub t_hi: f64,
    /// Nearest terminal per cone, `None` when the cone is empty.
    pub labels: [Option<usize>; 6],
    /// Terminals tied with a label over the whole interval (mirror images
    /// across the line). Usually empty.
    pub ties: Vec<usize>,
}

impl LabelledInterval {
    pub fn label(&self, cone: ConeIndex) -> Option<usize> {
        self.labels[cone.index()]
    }

    pub fn range(&self) -> ParamRange {
        ParamRange {
            lo: self.t_lo,
            hi: self.t_hi,
        }
    }

    /// Sorted, deduplicated potential Steiner neighbours.
    pub fn candidates(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.labels.iter().flatten().copied().collect();
        c.extend_from_slice(&self.ties);
        c.sort_unstable();
        c.dedup();
        c
    }
}

/// Solution set of `c0 + c1·t >= 0`.
fn half_line(c0: f64, c1: f64) -> (f64, f64) {
    if c1 > 0.0 {
        (-c0 / c1, f64::INFINITY)
    } else if c1 < 0.0 {
        (f64::NEG_INFINITY, -c0 / c1)
    } else if c0 >= 0.0 {
        (f64::NEG_INFINITY, f64::INFINITY)
    } else {
        (f64::INFINITY, f64::NEG_INFINITY)
    }
}

/// Parameters `t` on the supporting line of `gamma` from which `p` lies in
/// cone `i` of apex `γ(t)`, ignoring the constraint's own range.
fn visibility_on_line(p: Point, cone: ConeIndex, gamma: &Gamma) -> Option<(f64, f64)> {
    // v(t) = p - γ(t) = a - t·u must be left of the lower boundary and right
    // of the upper one.
    let a = p - gamma.origin();
    let u = gamma.direction();
    let (lo_dir, hi_dir) = (cone.lower(), cone.upper());
    let (l1, h1) = half_line(lo_dir.cross(a), -lo_dir.cross(u));
    let (l2, h2) = half_line(-hi_dir.cross(a), hi_dir.cross(u));
    let (lo, hi) = (l1.max(l2), h1.min(h2));
    (lo < hi).then_some((lo, hi))
}

/// Parameter interval (clipped to the constraint's range) on which `p` is
/// inside cone `i` apexed at `γ(t)`. Boundary ownership follows the
/// half-open cone convention only up to the endpoints themselves.
pub fn cone_visibility_range(p: Point, cone: ConeIndex, gamma: &Gamma) -> Option<ParamRange> {
    let (lo, hi) = visibility_on_line(p, cone, gamma)?;
    ParamRange { lo, hi }.intersect(&gamma.range())
}

fn distance_functions(points: &[Point], gamma: &Gamma) -> Vec<Affine> {
    let u = gamma.direction();
    points
        .iter()
        .map(|&p| {
            let a = p - gamma.origin();
            Affine {
                slope: -2.0 * a.dot(u),
                intercept: a.norm_sq(),
            }
        })
        .collect()
}

fn cone_envelope(points: &[Point], gamma: &Gamma, funcs: &[Affine], cone: ConeIndex) -> Envelope {
    let domains: Vec<Domain> = points
        .iter()
        .enumerate()
        .filter_map(|(id, &p)| {
            visibility_on_line(p, cone, gamma).map(|(lo, hi)| Domain {
                id: id as u32,
                lo,
                hi,
            })
        })
        .collect();
    lower_envelope(funcs, &domains)
}

/// Labelled intervals tiling `gamma.range()` in increasing order.
pub fn labelled_intervals(points: &[Point], gamma: &Gamma) -> Vec<LabelledInterval> {
    build(points, gamma, false)
}

/// As [`labelled_intervals`], computing the six cone envelopes in parallel.
pub fn labelled_intervals_par(points: &[Point], gamma: &Gamma) -> Vec<LabelledInterval> {
    build(points, gamma, true)
}

fn build(points: &[Point], gamma: &Gamma, parallel: bool) -> Vec<LabelledInterval> {
    let funcs = distance_functions(points, gamma);
    let envelopes: Vec<Envelope> = if parallel {
        ConeIndex::ALL
            .par_iter()
            .map(|&c| cone_envelope(points, gamma, &funcs, c))
            .collect()
    } else {
        ConeIndex::ALL
            .iter()
            .map(|&c| cone_envelope(points, gamma, &funcs, c))
            .collect()
    };
    overlay(&envelopes, gamma.range())
}

fn overlay(envelopes: &[Envelope], range: ParamRange) -> Vec<LabelledInterval> {
    let mut breaks: Vec<f64> = envelopes
        .iter()
        .flat_map(|e| e.iter().skip(1).map(|p| p.start))
        .filter(|&t| t > range.lo && t < range.hi)
        .collect();
    breaks.sort_unstable_by(f64::total_cmp);
    breaks.dedup();

    let mut out: Vec<LabelledInterval> = Vec::with_capacity(breaks.len() + 1);
    let mut cursor = [0usize; 6];
    let mut lo = range.lo;
    for k in 0..=breaks.len() {
        let hi = breaks.get(k).copied().unwrap_or(range.hi);
        let mut labels = [None; 6];
        let mut ties = Vec::new();
        for (c, env) in envelopes.iter().enumerate() {
            while cursor[c] + 1 < env.len() && env[cursor[c] + 1].start <= lo {
                cursor[c] += 1;
            }
            if let Some(owner) = env[cursor[c]].owner {
                labels[c] = Some(owner.id as usize);
                if let Some(t) = owner.tie {
                    ties.push(t as usize);
                }
            }
        }
        match out.last_mut() {
            Some(prev) if prev.labels == labels && prev.ties == ties => prev.t_hi = hi,
            _ => out.push(LabelledInterval {
                t_lo: lo,
                t_hi: hi,
                labels,
                ties,
            }),
        }
        lo = hi;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{cone_contains, distance, GammaKind};

    fn x_axis() -> Gamma {
        Gamma::line(Point::new(0.0, 0.0), Point::new(1.0, 0.0)).unwrap()
    }

    fn cone(i: usize) -> ConeIndex {
        ConeIndex::new(i).unwrap()
    }

    /// Membership sampling of cone_contains over t.
    fn sampled_range(p: Point, c: ConeIndex, g: &Gamma, lo: f64, hi: f64) -> Option<(f64, f64)> {
        let steps = 200_000;
        let mut found: Option<(f64, f64)> = None;
        for k in 0..=steps {
            let t = lo + (hi - lo) * k as f64 / steps as f64;
            let q = g.at(t);
            if q != p && cone_contains(q, c, p).unwrap() {
                found = Some(match found {
                    None => (t, t),
                    Some((a, _)) => (a, t),
                });
            }
        }
        found
    }

    #[test]
    fn visibility_examples() {
        let g = x_axis();
        assert_eq!(
            cone_visibility_range(Point::new(0.0, -1.0), cone(0), &g),
            None
        );

        let r = cone_visibility_range(Point::new(0.0, 1.0), cone(1), &g).unwrap();
        let inv = 1.0 / 3f64.sqrt();
        assert!((r.lo + inv).abs() < 1e-12 && (r.hi - inv).abs() < 1e-12);
        let (slo, shi) = sampled_range(Point::new(0.0, 1.0), cone(1), &g, -2.0, 2.0).unwrap();
        assert!((slo - r.lo).abs() < 1e-4 && (shi - r.hi).abs() < 1e-4);

        let r = cone_visibility_range(Point::new(5.0, 1.0), cone(0), &g).unwrap();
        assert_eq!(r.lo, f64::NEG_INFINITY);
        assert!((r.hi - (5.0 - inv)).abs() < 1e-12);
        let (slo, shi) = sampled_range(Point::new(5.0, 1.0), cone(0), &g, -20.0, 20.0).unwrap();
        assert_eq!(slo, -20.0);
        assert!((shi - r.hi).abs() < 1e-3);
    }

    #[test]
    fn visibility_matches_sampling_on_random_configurations() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let p = Point::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let ang: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let g = Gamma::line(
                Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                Point::new(ang.cos(), ang.sin()),
            )
            .unwrap();
            for c in ConeIndex::ALL {
                let exact = cone_visibility_range(p, c, &g)
                    .map(|r| (r.lo.max(-30.0), r.hi.min(30.0)))
                    .filter(|(a, b)| b - a > 1e-3);
                let sampled = sampled_range(p, c, &g, -30.0, 30.0);
                match (exact, sampled) {
                    (None, None) => {}
                    (Some((a, b)), Some((sa, sb))) => {
                        assert!((a - sa).abs() < 1e-3 && (b - sb).abs() < 1e-3);
                    }
                    (e, s) => {
                        // Only a sliver thinner than the sampling step may disagree.
                        let w = e.or(s).map(|(a, b)| b - a).unwrap();
                        assert!(w < 1e-3, "{e:?} vs {s:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn single_point_above_axis() {
        let p = Point::new(0.0, 1.0);
        let iv = labelled_intervals(&[p], &x_axis());
        assert_eq!(iv.len(), 3);
        let inv = 1.0 / 3f64.sqrt();
        assert_eq!(iv[0].t_lo, f64::NEG_INFINITY);
        assert!((iv[0].t_hi + inv).abs() < 1e-12);
        assert_eq!(iv[0].labels, [Some(0), None, None, None, None, None]);
        assert_eq!(iv[1].labels, [None, Some(0), None, None, None, None]);
        assert_eq!(iv[2].labels, [None, None, Some(0), None, None, None]);
        assert!((iv[2].t_lo - inv).abs() < 1e-12);
        assert_eq!(iv[2].t_hi, f64::INFINITY);
    }

    #[test]
    fn segment_clips_without_relabelling() {
        let p = Point::new(0.0, 1.0);
        let seg = Gamma::new(
            GammaKind::Segment,
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Some((-0.2, 0.3)),
        )
        .unwrap();
        let iv = labelled_intervals(&[p], &seg);
        assert_eq!(iv.len(), 1);
        assert_eq!((iv[0].t_lo, iv[0].t_hi), (-0.2, 0.3));
        assert_eq!(iv[0].labels, [None, Some(0), None, None, None, None]);

        let wide = Gamma::new(
            GammaKind::Segment,
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Some((-3.0, 3.0)),
        )
        .unwrap();
        let full = labelled_intervals(&[p], &x_axis());
        let clipped = labelled_intervals(&[p], &wide);
        assert_eq!(clipped.len(), 3);
        for (a, b) in clipped.iter().zip(&full) {
            assert_eq!(a.labels, b.labels);
        }
        assert_eq!(clipped[0].t_lo, -3.0);
        assert_eq!(clipped[2].t_hi, 3.0);
    }

    #[test]
    fn mirror_images_are_both_candidates() {
        // A line along a cone bisector puts mirror images in the same cone.
        let ang = std::f64::consts::PI / 6.0;
        let u = Point::new(ang.cos(), ang.sin());
        let n = Point::new(-u.y, u.x);
        let g = Gamma::line(Point::new(0.0, 0.0), u).unwrap();
        let base = u.scale(3.0);
        let pts = [base + n.scale(0.5), base - n.scale(0.5)];
        let iv = labelled_intervals(&pts, &g);
        assert!(iv
            .iter()
            .any(|i| i.candidates() == vec![0, 1] && i.labels.iter().flatten().count() == 1));
    }

    #[test]
    fn labels_match_brute_force_nearest_in_cone() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..10 {
            let pts: Vec<Point> = (0..40)
                .map(|_| Point::new(rng.gen::<f64>(), rng.gen::<f64>()))
                .collect();
            let ang: f64 = rng.gen_range(0.0..std::f64::consts::PI);
            let g = Gamma::line(
                Point::new(rng.gen::<f64>(), rng.gen::<f64>()),
                Point::new(ang.cos(), ang.sin()),
            )
            .unwrap();
            let iv = labelled_intervals(&pts, &g);
            assert!(iv.len() <= 12 * pts.len() + 2);
            for w in iv.windows(2) {
                assert_eq!(w[0].t_hi, w[1].t_lo);
            }
            for _ in 0..300 {
                let t: f64 = rng.gen_range(-2.0..2.0);
                let k = iv.partition_point(|i| i.t_hi <= t);
                let q = g.at(t);
                for c in ConeIndex::ALL {
                    let mut best: Option<(f64, usize)> = None;
                    for (idx, &p) in pts.iter().enumerate() {
                        if cone_contains(q, c, p).unwrap() {
                            let d = distance(q, p);
                            if best.is_none_or(|(bd, _)| d < bd) {
                                best = Some((d, idx));
                            }
                        }
                    }
                    assert_eq!(iv[k].label(c), best.map(|b| b.1), "t={t} cone {c:?}");
                }
            }
        }
    }
}
