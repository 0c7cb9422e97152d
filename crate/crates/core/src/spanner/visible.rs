use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::edge_len;
use super::faces::FaceSet;
use crate::arith::{rat, Rational};
use crate::delaunay::DelaunayGraph;
use crate::point::{on_segment, orient, segment_contact_x, OnSegment, Point, SegmentContact};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VisibleViolation {
    pub face: usize,
    pub p: usize,
    pub q: usize,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VisiblePairReport {
    /// Non-adjacent visible pairs that were measured.
    pub pairs_checked: usize,
    pub worst_ratio: f64,
    pub violations: Vec<VisibleViolation>,
}

impl VisiblePairReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

fn winding(g: &DelaunayGraph, walk: &[(usize, usize)], m: &Point) -> i64 {
    let mut w = 0;
    for &(u, v) in walk {
        let (a, b) = (&g.sites.point(u).exact, &g.sites.point(v).exact);
        if a.y <= m.y {
            if b.y > m.y && orient(a, b, m).unwrap() == Ordering::Greater {
                w += 1;
            }
        } else if b.y <= m.y && orient(a, b, m).unwrap() == Ordering::Less {
            w -= 1;
        }
    }
    w
}

/// Whether the closed segment between sites `p` and `q` stays in the closure
/// of face `face`. The graph must be connected and plane.
pub fn segment_in_face(g: &DelaunayGraph, fs: &FaceSet, face: usize, p: usize, q: usize) -> bool {
    let pts = g.sites.points();
    let (a, b) = (&pts[p].exact, &pts[q].exact);
    let d = b.sub(a);
    let dd = d.dot(&d);
    let param = |x: &Point| x.sub(a).dot(&d) / &dd;
    let (zero, one) = (rat(0.0), rat(1.0));
    let mut cuts: Vec<Rational> = alloc::vec![zero.clone(), one.clone()];
    for &(u, w) in &g.edges {
        if segment_contact_x(&pts[p], &pts[q], &pts[u], &pts[w]) != SegmentContact::Conflict {
            continue;
        }
        let (c, e) = (&pts[u].exact, &pts[w].exact);
        let s = e.sub(c);
        let den = d.cross(&s);
        if den == zero {
            cuts.push(param(c));
            cuts.push(param(e));
        } else {
            cuts.push(c.sub(a).cross(&s) / den);
        }
    }
    cuts.retain(|t| *t >= zero && *t <= one);
    cuts.sort();
    cuts.dedup();
    let walk = &fs.faces[face];
    let sides: BTreeSet<(usize, usize)> = walk.iter().copied().collect();
    let outer = fs.outer_face == Some(face);
    cuts.windows(2).all(|t| {
        let mid = a.along(&d, &((&t[0] + &t[1]) / rat(2.0)));
        let on = g.edges.iter().find(|&&(u, w)| {
            on_segment::<Rational>(&mid, &pts[u].exact, &pts[w].exact).unwrap() != OnSegment::Off
        });
        match on {
            Some(&(u, w)) => sides.contains(&(u, w)) || sides.contains(&(w, u)),
            None => winding(g, walk, &mid) == if outer { 0 } else { 1 },
        }
    })
}

/// For every face and every non-adjacent pair of its vertices whose segment
/// stays in the closed face, whether the graph distance is at most
/// `kappa |pq|` up to a relative slack of `1e-9`. `dist` holds all-pairs
/// graph distances.
pub fn visible_pair_check(g: &DelaunayGraph, fs: &FaceSet, dist: &[Vec<f64>], kappa: f64) -> VisiblePairReport {
    let pts = g.sites.points();
    let mut seen: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    let mut report = VisiblePairReport { pairs_checked: 0, worst_ratio: 1.0, violations: Vec::new() };
    for (fi, walk) in fs.faces.iter().enumerate() {
        let mut verts: Vec<usize> = walk.iter().map(|e| e.0).collect();
        verts.sort_unstable();
        verts.dedup();
        for (k, &p) in verts.iter().enumerate() {
            for &q in &verts[k + 1..] {
                if g.has_edge(p, q) || !seen.insert((fi, p, q)) || !segment_in_face(g, fs, fi, p, q) {
                    continue;
                }
                report.pairs_checked += 1;
                let ratio = dist[p][q] / edge_len(pts[p].f, pts[q].f);
                report.worst_ratio = report.worst_ratio.max(ratio);
                if ratio > kappa * (1.0 + 1e-9) {
                    report.violations.push(VisibleViolation { face: fi, p, q, ratio });
                }
            }
        }
    }
    report
}
