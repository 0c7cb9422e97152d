use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::edge::{edge_exists, empty_homothet};
use super::SiteSet;
use crate::arith::Rational;
use crate::point::{on_segment, segment_contact_x, OnSegment, SegmentContact};
use crate::shape::{ConvexBody, Homothet};

/// Delaunay graph with one empty homothet per edge.
#[derive(Debug, Clone)]
pub struct DelaunayGraph {
    pub sites: SiteSet,
    /// Pairs `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub witnesses: BTreeMap<(usize, usize), Homothet>,
    pub adjacency: Vec<Vec<usize>>,
}

/// Two edges that touch somewhere other than a shared endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlanarityViolation {
    pub e1: (usize, usize),
    pub e2: (usize, usize),
}

impl DelaunayGraph {
    /// Assemble a graph from per-pair results in any order.
    pub fn from_witnesses(sites: SiteSet, found: impl IntoIterator<Item = ((usize, usize), Homothet)>) -> DelaunayGraph {
        let mut witnesses = BTreeMap::new();
        for ((i, j), h) in found {
            witnesses.insert((i.min(j), i.max(j)), h);
        }
        let edges: Vec<(usize, usize)> = witnesses.keys().copied().collect();
        let mut adjacency = alloc::vec![Vec::new(); sites.len()];
        for &(i, j) in &edges {
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        DelaunayGraph { sites, edges, witnesses, adjacency }
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.witnesses.contains_key(&(i.min(j), i.max(j)))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return true;
        }
        let mut seen = alloc::vec![false; n];
        let mut stack = alloc::vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Edges whose open segment contains another site, as `(edge, site)`.
    pub fn sites_on_edges(&self) -> Vec<((usize, usize), usize)> {
        let mut out = Vec::new();
        for &(i, j) in &self.edges {
            let (a, b) = (self.sites.point(i), self.sites.point(j));
            for k in 0..self.len() {
                if k == i || k == j {
                    continue;
                }
                if on_segment::<Rational>(&self.sites.point(k).exact, &a.exact, &b.exact)
                    == Ok(OnSegment::Interior)
                {
                    out.push(((i, j), k));
                }
            }
        }
        out
    }
}

/// Every pair tested in index order.
pub fn build_delaunay(body: &ConvexBody, sites: &SiteSet) -> DelaunayGraph {
    let n = sites.len();
    let mut found = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if let Some(h) = edge_exists(body, sites, i, j).expect("distinct indices") {
                found.push(((i, j), h));
            }
        }
    }
    DelaunayGraph::from_witnesses(sites.clone(), found)
}

/// Exact test that no two edges cross, overlap, or pass through a vertex.
pub fn planarity_check(g: &DelaunayGraph) -> Result<(), PlanarityViolation> {
    let pts = g.sites.points();
    let boxes: Vec<[f64; 4]> = g
        .edges
        .iter()
        .map(|&(i, j)| {
            let (a, b) = (pts[i].f, pts[j].f);
            [a[0].min(b[0]), a[1].min(b[1]), a[0].max(b[0]), a[1].max(b[1])]
        })
        .collect();
    for (x, &e1) in g.edges.iter().enumerate() {
        for (y, &e2) in g.edges.iter().enumerate().skip(x + 1) {
            let (b1, b2) = (boxes[x], boxes[y]);
            let slack = 1e-9 * (1.0 + b1.iter().chain(b2.iter()).map(|v| v.abs()).fold(0.0, f64::max));
            if b1[2] + slack < b2[0] || b2[2] + slack < b1[0] || b1[3] + slack < b2[1] || b2[3] + slack < b1[1] {
                continue;
            }
            let c = segment_contact_x(&pts[e1.0], &pts[e1.1], &pts[e2.0], &pts[e2.1]);
            if c == SegmentContact::Conflict {
                return Err(PlanarityViolation { e1, e2 });
            }
        }
    }
    if let Some(&(e, _)) = g.sites_on_edges().first() {
        return Err(PlanarityViolation { e1: e, e2: e });
    }
    Ok(())
}

/// Both endpoints on the boundary of `w` and no site in its interior.
pub fn verify_witness(body: &ConvexBody, sites: &SiteSet, edge: (usize, usize), w: &Homothet) -> bool {
    edge.0 != edge.1 && edge.0 < sites.len() && edge.1 < sites.len() && empty_homothet(body, sites, edge.0, edge.1, w)
}
