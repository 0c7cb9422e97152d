//! Multi-threaded versions of the all-pairs computations. Results do not
//! depend on the number of threads.

use dgspan_core::delaunay::{edge_exists, DelaunayGraph, SiteSet};
use dgspan_core::spanner::single_source;
use dgspan_core::ConvexBody;
use rayon::prelude::*;

/// Delaunay graph with every pair tested concurrently.
pub fn build_delaunay_par(body: &ConvexBody, sites: &SiteSet) -> DelaunayGraph {
    let n = sites.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let found: Vec<_> = pairs
        .par_iter()
        .filter_map(|&(i, j)| edge_exists(body, sites, i, j).expect("distinct indices").map(|h| ((i, j), h)))
        .collect();
    DelaunayGraph::from_witnesses(sites.clone(), found)
}

/// Graph distances from every site.
pub fn all_pairs(g: &DelaunayGraph) -> Vec<Vec<f64>> {
    (0..g.len()).into_par_iter().map(|s| single_source(g, s)).collect()
}
