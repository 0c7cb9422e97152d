//! Delaunay graphs under a convex distance function.
//!
//! Two sites are adjacent when their Voronoi cells share a boundary piece of
//! positive length. Cells follow the refined definition in which points
//! equidistant from several sites go to the lexicographically smallest one,
//! so a pair is tested by looking, along each straight piece of the two-site
//! bisector, for a sub-interval where no other site is closer and whose two
//! sides are labelled by the two sites.

mod bisector;
mod edge;
mod graph;
pub(crate) mod labels;
mod oracle;

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::DelaunayError;
use crate::point::{Point, XPoint};

pub use bisector::{bisector, Bisector, BisectorPiece, PieceKind};
pub use edge::{domination_intervals, edge_exists, DominationInterval, Strictness};
pub use graph::{build_delaunay, planarity_check, verify_witness, DelaunayGraph, PlanarityViolation};
pub use oracle::{
    default_window, oracle_edges, oracle_window, sampled_voronoi_oracle, star_shape_violations, OracleGrid, OracleOptions,
    OracleReport,
};

/// Distinct sites with their lexicographic ranks.
#[derive(Debug, Clone)]
pub struct SiteSet {
    points: Vec<XPoint>,
    rank: Vec<usize>,
    lex_order: Vec<usize>,
}

impl SiteSet {
    pub fn new(points: Vec<Point>) -> Result<SiteSet, DelaunayError> {
        let mut lex_order: Vec<usize> = (0..points.len()).collect();
        lex_order.sort_by(|&a, &b| lex_cmp(&points[a], &points[b]));
        for w in lex_order.windows(2) {
            if points[w[0]] == points[w[1]] {
                let (a, b) = if w[0] < w[1] { (w[0], w[1]) } else { (w[1], w[0]) };
                return Err(DelaunayError::CoincidentSites(a, b));
            }
        }
        let mut rank = alloc::vec![0; points.len()];
        for (r, &i) in lex_order.iter().enumerate() {
            rank[i] = r;
        }
        Ok(SiteSet { points: points.into_iter().map(XPoint::new).collect(), rank, lex_order })
    }

    pub fn from_f64(points: &[[f64; 2]]) -> Result<SiteSet, DelaunayError> {
        SiteSet::new(points.iter().map(|p| Point::from_f64(p[0], p[1])).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &XPoint {
        &self.points[i]
    }

    pub fn points(&self) -> &[XPoint] {
        &self.points
    }

    /// Position of site `i` in lexicographic order.
    pub fn rank(&self, i: usize) -> usize {
        self.rank[i]
    }

    /// Site indices sorted lexicographically by `(x, y)`.
    pub fn lex_order(&self) -> &[usize] {
        &self.lex_order
    }
}

fn lex_cmp(a: &Point, b: &Point) -> Ordering {
    a.x.cmp(&b.x).then_with(|| a.y.cmp(&b.y))
}
