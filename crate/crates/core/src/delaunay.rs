//! Delaunay triangulation edges.
//!
//! The triangulation itself is delegated to `spade`, which evaluates its
//! orientation and in-circle tests with adaptive exact arithmetic and
//! resolves cocircular ties deterministically.

use spade::{DelaunayTriangulation, HasPosition, Point2, Triangulation};

use crate::error::{Result, SteinerError};
use crate::geometry::{validate_points, Point};

struct Site {
    pos: Point2<f64>,
    index: usize,
}

impl HasPosition for Site {
    type Scalar = f64;

    fn position(&self) -> Point2<f64> {
        self.pos
    }
}

/// Undirected Delaunay edges as `(min, max)` index pairs, sorted.
///
/// For collinear inputs the result is the path through the points in order
/// along their line.
pub fn delaunay_edges(points: &[Point]) -> Result<Vec<(usize, usize)>> {
    validate_points(points)?;
    if points.is_empty() {
        return Err(SteinerError::TooFewPoints {
            required: 1,
            got: 0,
        });
    }
    let sites: Vec<Site> = points
        .iter()
        .enumerate()
        .map(|(index, p)| Site {
            pos: Point2::new(p.x, p.y),
            index,
        })
        .collect();
    let tri: DelaunayTriangulation<Site> = DelaunayTriangulation::bulk_load(sites)
        .map_err(|e| SteinerError::Triangulation(format!("{e:?}")))?;
    let mut edges: Vec<(usize, usize)> = tri
        .undirected_edges()
        .map(|e| {
            let [a, b] = e.vertices();
            let (a, b) = (a.data().index, b.data().index);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    Ok(edges)
}

/// Delaunay triangles as counterclockwise index triples.
pub fn delaunay_triangles(points: &[Point]) -> Result<Vec<[usize; 3]>> {
    validate_points(points)?;
    let sites: Vec<Site> = points
        .iter()
        .enumerate()
        .map(|(index, p)| Site {
            pos: Point2::new(p.x, p.y),
            index,
        })
        .collect();
    let tri: DelaunayTriangulation<Site> = DelaunayTriangulation::bulk_load(sites)
        .map_err(|e| SteinerError::Triangulation(format!("{e:?}")))?;
    Ok(tri
        .inner_faces()
        .map(|f| {
            let [a, b, c] = f.vertices();
            [a.data().index, b.data().index, c.data().index]
        })
        .collect())
}
