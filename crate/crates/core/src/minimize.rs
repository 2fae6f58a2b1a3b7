//! Minimizing a sum of distances from a moving point on a line to fixed
//! points. Along an affine path each term is convex, so the sum is convex in
//! the parameter and golden-section bracketing is certified.

use crate::geometry::{distance, Gamma, ParamRange, Point};

const GOLDEN_ITERS: usize = 80;
const NEWTON_STEPS: usize = 5;
const PARAM_TOL: f64 = 1e-10;

/// Sum of distances from `γ(t)` to every point of `targets`.
pub fn sum_dist(gamma: &Gamma, t: f64, targets: &[Point]) -> f64 {
    let q = gamma.at(t);
    targets.iter().map(|&a| distance(a, q)).sum()
}

/// First and second derivative of [`sum_dist`] in `t`, or `None` where some
/// term is not differentiable (the moving point sits on a target).
fn derivatives(gamma: &Gamma, t: f64, targets: &[Point]) -> Option<(f64, f64)> {
    let q = gamma.at(t);
    let u = gamma.direction();
    let (mut d1, mut d2) = (0.0, 0.0);
    for &a in targets {
        let v = q - a;
        let r = v.norm();
        if r < 1e-12 {
            return None;
        }
        let vu = v.dot(u);
        d1 += vu / r;
        d2 += (r * r - vu * vu).max(0.0) / (r * r * r);
    }
    Some((d1, d2))
}

/// Argmin and minimum of [`sum_dist`] over `range` (which may be unbounded).
///
/// The minimizer of a sum of convex terms lies between the smallest and the
/// largest individual minimizer, i.e. within the projection span of the
/// targets; the search is confined to that span intersected with `range`.
pub fn minimize_on_interval(gamma: &Gamma, range: ParamRange, targets: &[Point]) -> (f64, f64) {
    assert!(!targets.is_empty(), "no targets to minimize against");
    let (mut cmin, mut cmax) = (f64::INFINITY, f64::NEG_INFINITY);
    for &a in targets {
        let t = gamma.project(a);
        cmin = cmin.min(t);
        cmax = cmax.max(t);
    }
    let (lo, hi) = if cmax < range.lo {
        (range.lo, range.lo)
    } else if cmin > range.hi {
        (range.hi, range.hi)
    } else {
        (cmin.max(range.lo), cmax.min(range.hi))
    };
    let f = |t: f64| sum_dist(gamma, t, targets);
    if lo == hi {
        return (lo, f(lo));
    }

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..GOLDEN_ITERS {
        if b - a <= PARAM_TOL * 1e-3 * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    let (mut t, mut ft) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };

    // Newton on the derivative; a step leaving [lo, hi] or failing to
    // decrease falls back to bisection toward it.
    for _ in 0..NEWTON_STEPS {
        let Some((d1, d2)) = derivatives(gamma, t, targets) else {
            break;
        };
        if d2 <= 0.0 || d1 == 0.0 {
            break;
        }
        let mut next = (t - d1 / d2).clamp(lo, hi);
        let mut fn_ = f(next);
        let mut halvings = 0;
        while fn_ > ft && halvings < 30 {
            next = 0.5 * (t + next);
            fn_ = f(next);
            halvings += 1;
        }
        if fn_ > ft {
            break;
        }
        let step = (next - t).abs();
        t = next;
        ft = fn_;
        if step < PARAM_TOL {
            break;
        }
    }

    for end in [lo, hi] {
        let fe = f(end);
        if fe < ft {
            t = end;
            ft = fe;
        }
    }
    (t, ft)
}
