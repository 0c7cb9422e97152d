use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::edge_len;
use super::faces::is_triangulation;
use crate::delaunay::DelaunayGraph;
use crate::error::SpannerError;
use crate::params::{stretch_bound, ShapeParams};

/// Worst ratio of graph distance to Euclidean distance over all pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct StretchReport {
    pub max_stretch: f64,
    pub arg_pair: (usize, usize),
    /// `per_pair_stretch[i][j]`, with ones on the diagonal.
    pub per_pair_stretch: Vec<Vec<f64>>,
    /// The stretch bound for the body, for the kind of graph at hand.
    pub bound_used: f64,
    pub is_triangulation: bool,
}

impl StretchReport {
    /// Whether the worst stretch respects the bound up to a relative slack.
    pub fn within_bound(&self, rel_tol: f64) -> bool {
        self.max_stretch <= self.bound_used * (1.0 + rel_tol)
    }
}

#[derive(PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

/// Dijkstra from `src` with Euclidean edge weights; unreachable sites get
/// infinity.
pub fn single_source(g: &DelaunayGraph, src: usize) -> Vec<f64> {
    let pts = g.sites.points();
    let mut dist = vec![f64::INFINITY; g.len()];
    let mut heap = BinaryHeap::new();
    dist[src] = 0.0;
    heap.push(Entry(0.0, src));
    while let Some(Entry(d, v)) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        for &w in &g.adjacency[v] {
            let nd = d + edge_len(pts[v].f, pts[w].f);
            if nd < dist[w] {
                dist[w] = nd;
                heap.push(Entry(nd, w));
            }
        }
    }
    dist
}

/// Assemble a report from the rows of all single-source runs.
pub fn stretch_from_rows(g: &DelaunayGraph, rows: &[Vec<f64>], params: &ShapeParams) -> Result<StretchReport, SpannerError> {
    let n = g.len();
    let pts = g.sites.points();
    let mut per = vec![vec![1.0; n]; n];
    let (mut best, mut arg) = (1.0, (0, 0));
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if !rows[i][j].is_finite() {
                return Err(SpannerError::Disconnected(i.min(j), i.max(j)));
            }
            let s = rows[i][j] / edge_len(pts[i].f, pts[j].f);
            per[i][j] = s;
            if s > best && i < j {
                best = s;
                arg = (i, j);
            }
        }
    }
    let tri = is_triangulation(g)?;
    let bound_used = stretch_bound(params.alpha, params.kappa, tri).unwrap_or(f64::INFINITY);
    Ok(StretchReport { max_stretch: best, arg_pair: arg, per_pair_stretch: per, bound_used, is_triangulation: tri })
}

/// All-pairs stretch, with the bound chosen by whether `g` is a
/// triangulation.
pub fn euclidean_stretch(g: &DelaunayGraph, params: &ShapeParams) -> Result<StretchReport, SpannerError> {
    let rows: Vec<Vec<f64>> = (0..g.len()).map(|s| single_source(g, s)).collect();
    stretch_from_rows(g, &rows, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delaunay::{build_delaunay, SiteSet};
    use crate::params::compute_params;
    use crate::shape::square;

    #[test]
    fn triangle_and_collinear_path_have_stretch_one() {
        let body = square();
        let params = compute_params(&body, 1e-3);
        let g = build_delaunay(&body, &SiteSet::from_f64(&[[0.0, 0.0], [5.0, 1.0], [2.0, 4.0]]).unwrap());
        let r = euclidean_stretch(&g, &params).unwrap();
        assert_eq!(r.max_stretch, 1.0);
        assert!(r.is_triangulation);
        let pts: Vec<[f64; 2]> = (0..6).map(|k| [2.0 * k as f64, k as f64]).collect();
        let g = build_delaunay(&body, &SiteSet::from_f64(&pts).unwrap());
        let r = euclidean_stretch(&g, &params).unwrap();
        assert!((r.max_stretch - 1.0).abs() < 1e-12);
        assert!(!r.is_triangulation);
        assert_eq!(r.bound_used, params.t_general);
    }

    #[test]
    fn disconnected_pair_reported() {
        let s = SiteSet::from_f64(&[[0.0, 0.0], [1.0, 0.0], [5.0, 5.0]]).unwrap();
        let g = DelaunayGraph::from_witnesses(s, [((0, 1), crate::shape::Homothet { center: crate::point::Point::from_f64(0.5, 0.0), scale: crate::arith::rat(0.5) })]);
        let rows: Vec<Vec<f64>> = (0..3).map(|v| single_source(&g, v)).collect();
        let params = compute_params(&square(), 1e-3);
        assert_eq!(stretch_from_rows(&g, &rows, &params), Err(SpannerError::Disconnected(0, 2)));
    }
}
