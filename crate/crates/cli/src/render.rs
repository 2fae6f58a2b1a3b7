//! SVG drawing of an instance and its solution: terminals, constraints
//! with their interval breakpoints, kept and removed MST edges and the
//! Steiner stars.

use std::fmt::Write;

use steiner_core::{labelled_intervals, Gamma, ParamRange, Point};

use crate::instance::Instance;
use crate::output::SolutionFile;

const SIZE: f64 = 800.0;
const TICK: f64 = 6.0;

/// World-to-pixel map with the y axis pointing up.
struct View {
    min: Point,
    max: Point,
    scale: f64,
}

impl View {
    fn new(points: &[Point]) -> Self {
        let (mut lo, mut hi) = (points[0], points[0]);
        for p in points {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let span = (hi.x - lo.x).max(hi.y - lo.y);
        let span = if span > 0.0 { span } else { 1.0 };
        let pad = 0.08 * span;
        let min = Point::new(lo.x - pad, lo.y - pad);
        let max = Point::new(lo.x + span + pad, lo.y + span + pad);
        View {
            min,
            max,
            scale: SIZE / (span + 2.0 * pad),
        }
    }

    fn px(&self, p: Point) -> (f64, f64) {
        (
            (p.x - self.min.x) * self.scale,
            (self.max.y - p.y) * self.scale,
        )
    }

    /// Parameters of `gamma` that fall inside the view.
    fn clip(&self, gamma: &Gamma) -> Option<ParamRange> {
        let (o, d) = (gamma.origin(), gamma.direction());
        let mut r = gamma.range();
        for (oc, dc, lo, hi) in [
            (o.x, d.x, self.min.x, self.max.x),
            (o.y, d.y, self.min.y, self.max.y),
        ] {
            if dc.abs() < 1e-15 {
                if oc < lo || oc > hi {
                    return None;
                }
                continue;
            }
            let (a, b) = ((lo - oc) / dc, (hi - oc) / dc);
            r = r.intersect(&ParamRange {
                lo: a.min(b),
                hi: a.max(b),
            })?;
        }
        Some(r)
    }
}

fn line(out: &mut String, class: &str, a: (f64, f64), b: (f64, f64)) {
    let _ = writeln!(
        out,
        r#"<line class="{class}" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
        a.0, a.1, b.0, b.1
    );
}

pub fn render_svg(inst: &Instance, sol: &SolutionFile) -> String {
    let steiner: Vec<Point> = sol
        .steiner_points
        .iter()
        .map(|&[x, y]| Point::new(x, y))
        .collect();
    let mut all = inst.points.clone();
    all.extend(&steiner);
    let view = View::new(&all);
    let n = inst.points.len();

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    out.push_str(
        "<style>\
         .gamma{stroke:#4a7bd0;stroke-width:1.5}\
         .tick{stroke:#4a7bd0;stroke-width:1}\
         .mst{stroke:#222;stroke-width:1.5}\
         .removed{stroke:#c33;stroke-width:1;stroke-dasharray:4 3}\
         .steiner-edge{stroke:#2a2;stroke-width:1.5}\
         .terminal{fill:#222}\
         .steiner{fill:#fff;stroke:#2a2;stroke-width:2}\
         </style>\n",
    );
    let _ = writeln!(
        out,
        r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#
    );

    out.push_str("<g id=\"constraints\">\n");
    for g in &inst.lines {
        let Some(r) = view.clip(g) else { continue };
        line(&mut out, "gamma", view.px(g.at(r.lo)), view.px(g.at(r.hi)));
        let d = g.direction();
        let normal = (-d.y * TICK, -d.x * TICK);
        for iv in labelled_intervals(&inst.points, g).iter().skip(1) {
            if r.contains(iv.t_lo) {
                let (x, y) = view.px(g.at(iv.t_lo));
                line(
                    &mut out,
                    "tick",
                    (x - normal.0, y - normal.1),
                    (x + normal.0, y + normal.1),
                );
            }
        }
    }
    out.push_str("</g>\n<g id=\"removed\">\n");
    for &(u, v, _) in &sol.removed_mst_edges {
        if u < all.len() && v < all.len() {
            line(&mut out, "removed", view.px(all[u]), view.px(all[v]));
        }
    }
    out.push_str("</g>\n<g id=\"edges\">\n");
    for &(u, v, _) in &sol.edges {
        if u < all.len() && v < all.len() {
            let class = if u < n && v < n {
                "mst"
            } else {
                "steiner-edge"
            };
            line(&mut out, class, view.px(all[u]), view.px(all[v]));
        }
    }
    out.push_str("</g>\n<g id=\"vertices\">\n");
    for (i, &p) in all.iter().enumerate() {
        let (x, y) = view.px(p);
        let (class, r) = if i < n {
            ("terminal", 3.5)
        } else {
            ("steiner", 4.5)
        };
        let _ = writeln!(
            out,
            r#"<circle class="{class}" cx="{x:.3}" cy="{y:.3}" r="{r}"><title>{i}</title></circle>"#
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}
