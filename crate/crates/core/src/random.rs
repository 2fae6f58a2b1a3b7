//! Seeded random instances for tests and benchmarks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{Gamma, GammaKind, Point};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` points uniform in the unit square.
pub fn uniform_points(n: usize, seed: u64) -> Vec<Point> {
    let mut r = rng(seed);
    (0..n).map(|_| Point::new(r.gen(), r.gen())).collect()
}

/// Uniform direction through a uniform point of the unit square.
pub fn random_line<R: Rng>(r: &mut R) -> Gamma {
    let ang: f64 = r.gen_range(0.0..std::f64::consts::PI);
    Gamma::line(
        Point::new(r.gen(), r.gen()),
        Point::new(ang.cos(), ang.sin()),
    )
    .expect("unit direction")
}

/// Random line, ray or segment crossing the unit square.
pub fn random_gamma<R: Rng>(r: &mut R, kind: GammaKind) -> Gamma {
    let line = random_line(r);
    let range = match kind {
        GammaKind::Line => None,
        GammaKind::Ray => Some((r.gen_range(-1.0..0.5), f64::INFINITY)),
        GammaKind::Segment => {
            let a: f64 = r.gen_range(-1.0..0.5);
            Some((a, a + r.gen_range(0.05..1.5)))
        }
    };
    Gamma::new(kind, line.origin(), line.direction(), range).expect("valid range")
}
