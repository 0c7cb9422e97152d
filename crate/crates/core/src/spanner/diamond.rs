use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::arith::rat;
use crate::delaunay::DelaunayGraph;
use crate::point::{orient_x, XPoint};

/// The two isosceles triangles on one edge.
#[derive(Debug, Clone, PartialEq)]
pub struct DiamondEdge {
    pub edge: (usize, usize),
    /// Apex left of the edge directed from `edge.0` to `edge.1`, and right.
    pub apex_left: [f64; 2],
    pub apex_right: [f64; 2],
    pub left_empty: bool,
    pub right_empty: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiamondReport {
    pub alpha: f64,
    pub edges: Vec<DiamondEdge>,
    pub violations: Vec<(usize, usize)>,
}

impl DiamondReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

fn strictly_inside(a: &XPoint, b: &XPoint, c: &XPoint, s: &XPoint) -> bool {
    let o = orient_x(a, b, s);
    o != Ordering::Equal && orient_x(b, c, s) == o && orient_x(c, a, s) == o
}

/// For every edge, whether one of the two isosceles triangles with that
/// edge as base and base angle `alpha` has no site strictly inside. The
/// apex height is `tan(alpha) / 2` times the edge length, rounded to the
/// nearest double and then used exactly.
pub fn diamond_check(g: &DelaunayGraph, alpha: f64) -> DiamondReport {
    assert!(alpha > 0.0 && alpha < core::f64::consts::FRAC_PI_2, "alpha must lie in (0, pi/2)");
    let h = rat(libm::tan(alpha) / 2.0);
    let pts = g.sites.points();
    let mut edges = Vec::new();
    let mut violations = Vec::new();
    for &(i, j) in &g.edges {
        let (a, b) = (&pts[i], &pts[j]);
        let mid = a.exact.mid(&b.exact);
        let up = b.exact.sub(&a.exact).perp().scale(&h);
        let left = XPoint::new(mid.add(&up));
        let right = XPoint::new(mid.sub(&up));
        let empty = |apex: &XPoint| {
            (0..pts.len()).all(|k| k == i || k == j || !strictly_inside(a, b, apex, &pts[k]))
        };
        let (le, re) = (empty(&left), empty(&right));
        if !le && !re {
            violations.push((i, j));
        }
        edges.push(DiamondEdge {
            edge: (i, j),
            apex_left: left.f,
            apex_right: right.f,
            left_empty: le,
            right_empty: re,
        });
    }
    DiamondReport { alpha, edges, violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delaunay::{build_delaunay, SiteSet};
    use crate::point::Point;
    use crate::shape::square;

    #[test]
    fn two_sites_comply() {
        let g = build_delaunay(&square(), &SiteSet::from_f64(&[[0.0, 0.0], [3.0, 1.0]]).unwrap());
        let r = diamond_check(&g, 1.5);
        assert!(r.holds());
        assert_eq!(r.edges.len(), 1);
    }

    #[test]
    fn blocked_on_both_sides() {
        let s = SiteSet::from_f64(&[[0.0, 0.0], [2.0, 0.0], [1.0, 0.5], [1.0, -0.5]]).unwrap();
        let h = crate::shape::Homothet { center: Point::from_f64(1.0, 0.0), scale: rat(1.0) };
        let g = DelaunayGraph::from_witnesses(s, [((0, 1), h)]);
        assert!(!diamond_check(&g, 0.6).holds());
        assert!(diamond_check(&g, 0.4).holds());
    }
}
