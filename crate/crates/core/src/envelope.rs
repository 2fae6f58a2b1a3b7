//! Lower envelope of partially defined squared-distance functions along a
//! line.
//!
//! For a site `p` and a unit-speed line `o + t·u`, the squared distance is
//! `t² + slope·t + intercept`. The `t²` term is shared by every site, so
//! comparing two sites reduces to comparing two affine functions, which
//! cross at most once. Each site is only defined on one parameter interval;
//! the envelope of such pieces is built by pairwise divide-and-conquer merges.

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Affine {
    pub slope: f64,
    pub intercept: f64,
}

/// Relative tolerance under which two sites are treated as equidistant
/// everywhere (mirror images across the line).
const COINCIDENT_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Owner {
    pub id: u32,
    /// A second site whose distance function coincides with `id`'s.
    pub tie: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Piece {
    pub start: f64,
    pub owner: Option<Owner>,
}

/// Sorted pieces; the first starts at -∞ and each extends to the next start.
pub(crate) type Envelope = Vec<Piece>;

pub(crate) struct Domain {
    pub id: u32,
    pub lo: f64,
    pub hi: f64,
}

fn push(out: &mut Envelope, start: f64, owner: Option<Owner>) {
    if let Some(last) = out.last_mut() {
        if last.owner == owner {
            return;
        }
        if last.start == start {
            last.owner = owner;
            if out.len() >= 2 && out[out.len() - 2].owner == owner {
                out.pop();
            }
            return;
        }
    }
    out.push(Piece { start, owner });
}

fn leaf(d: &Domain) -> Envelope {
    let mut env = Vec::with_capacity(3);
    let owner = Some(Owner {
        id: d.id,
        tie: None,
    });
    if d.lo > f64::NEG_INFINITY {
        env.push(Piece {
            start: f64::NEG_INFINITY,
            owner: None,
        });
    }
    env.push(Piece { start: d.lo, owner });
    if d.hi < f64::INFINITY {
        env.push(Piece {
            start: d.hi,
            owner: None,
        });
    }
    env
}

fn coincident(f: Affine, g: Affine) -> bool {
    (f.slope - g.slope).abs() <= COINCIDENT_TOL * (1.0 + f.slope.abs() + g.slope.abs())
        && (f.intercept - g.intercept).abs()
            <= COINCIDENT_TOL * (1.0 + f.intercept.abs() + g.intercept.abs())
}

/// Lower of two owners on `[x, y)`, split at their crossing if it falls
/// strictly inside.
fn combine(
    funcs: &[Affine],
    a: Option<Owner>,
    b: Option<Owner>,
    x: f64,
    y: f64,
    out: &mut Envelope,
) {
    let (p, q) = match (a, b) {
        (None, other) | (other, None) => {
            push(out, x, other);
            return;
        }
        (Some(p), Some(q)) => (p, q),
    };
    let (fp, fq) = (funcs[p.id as usize], funcs[q.id as usize]);
    if coincident(fp, fq) {
        let (lo, hi) = (p.id.min(q.id), p.id.max(q.id));
        push(
            out,
            x,
            Some(Owner {
                id: lo,
                tie: Some(hi),
            }),
        );
        return;
    }
    // diff(t) = f_p(t) - f_q(t) = da·t + db
    let da = fp.slope - fq.slope;
    let db = fp.intercept - fq.intercept;
    if da == 0.0 {
        push(out, x, Some(if db <= 0.0 { p } else { q }));
        return;
    }
    let root = -db / da;
    // Left of the root diff has the sign of -da.
    let (left, right) = if da > 0.0 { (p, q) } else { (q, p) };
    if root > x && root < y {
        push(out, x, Some(left));
        push(out, root, Some(right));
    } else if root <= x {
        push(out, x, Some(right));
    } else {
        push(out, x, Some(left));
    }
}

fn merge(funcs: &[Affine], e1: &Envelope, e2: &Envelope) -> Envelope {
    let mut out = Vec::with_capacity(e1.len() + e2.len());
    let (mut i, mut j) = (0, 0);
    let mut x = f64::NEG_INFINITY;
    loop {
        let n1 = e1.get(i + 1).map_or(f64::INFINITY, |p| p.start);
        let n2 = e2.get(j + 1).map_or(f64::INFINITY, |p| p.start);
        let y = n1.min(n2);
        combine(funcs, e1[i].owner, e2[j].owner, x, y, &mut out);
        if y == f64::INFINITY {
            break;
        }
        if n1 == y {
            i += 1;
        }
        if n2 == y {
            j += 1;
        }
        x = y;
    }
    out
}

/// Lower envelope of `funcs[d.id]` restricted to each domain.
pub(crate) fn lower_envelope(funcs: &[Affine], domains: &[Domain]) -> Envelope {
    let mut layer: Vec<Envelope> = domains.iter().filter(|d| d.lo < d.hi).map(leaf).collect();
    if layer.is_empty() {
        return vec![Piece {
            start: f64::NEG_INFINITY,
            owner: None,
        }];
    }
    while layer.len() > 1 {
        let mut next = Vec::with_capacity(layer.len().div_ceil(2));
        let mut it = layer.chunks(2);
        for pair in &mut it {
            match pair {
                [a, b] => next.push(merge(funcs, a, b)),
                [a] => next.push(a.clone()),
                _ => unreachable!(),
            }
        }
        layer = next;
    }
    layer.pop().unwrap()
}
