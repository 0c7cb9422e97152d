use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::arith::{filtered, rat, Rational};
use crate::delaunay::{planarity_check, DelaunayGraph};
use crate::error::SpannerError;
use crate::point::{angle_cmp, orient_x};

/// Face cycles of a plane graph, each a list of directed edges with the face
/// on its left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSet {
    pub faces: Vec<Vec<(usize, usize)>>,
    /// The cycle with the smallest signed area; `None` without edges.
    pub outer_face: Option<usize>,
    /// Connected components, isolated sites included.
    pub components: usize,
    nontrivial: usize,
}

impl FaceSet {
    /// Faces of the plane drawing. Each component beyond the first adds an
    /// extra traversal of the one unbounded face.
    pub fn face_count(&self) -> usize {
        (self.faces.len() + 1).saturating_sub(self.nontrivial)
    }
}

/// Neighbours of every site in counter-clockwise order of direction.
pub(crate) fn rotation(g: &DelaunayGraph) -> Vec<Vec<usize>> {
    let pts = g.sites.points();
    (0..g.len())
        .map(|v| {
            let mut nb = g.adjacency[v].clone();
            nb.sort_by(|&a, &b| {
                filtered(
                    || angle_cmp(&pts[a].fast.sub(&pts[v].fast), &pts[b].fast.sub(&pts[v].fast)),
                    || angle_cmp(&pts[a].exact.sub(&pts[v].exact), &pts[b].exact.sub(&pts[v].exact)),
                )
            });
            nb
        })
        .collect()
}

/// Twice the signed area enclosed by a face walk.
pub(crate) fn walk_area(g: &DelaunayGraph, walk: &[(usize, usize)]) -> Rational {
    let mut a = rat(0.0);
    for &(u, w) in walk {
        a += g.sites.point(u).exact.cross(&g.sites.point(w).exact);
    }
    a
}

fn component_counts(g: &DelaunayGraph) -> (usize, usize) {
    let n = g.len();
    let mut seen = vec![false; n];
    let (mut all, mut nontrivial) = (0, 0);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        all += 1;
        if !g.adjacency[s].is_empty() {
            nontrivial += 1;
        }
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &g.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    (all, nontrivial)
}

/// Half-edge traversal of a plane graph.
pub fn faces(g: &DelaunayGraph) -> Result<FaceSet, SpannerError> {
    planarity_check(g).map_err(|v| SpannerError::NotPlane(v.e1, v.e2))?;
    Ok(faces_unchecked(g))
}

pub(crate) fn faces_unchecked(g: &DelaunayGraph) -> FaceSet {
    let rot = rotation(g);
    let mut pos: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (v, nb) in rot.iter().enumerate() {
        for (k, &w) in nb.iter().enumerate() {
            pos.insert((v, w), k);
        }
    }
    let mut used: BTreeMap<(usize, usize), bool> = pos.keys().map(|&e| (e, false)).collect();
    let mut out = Vec::new();
    let keys: Vec<(usize, usize)> = pos.keys().copied().collect();
    for start in keys {
        if used[&start] {
            continue;
        }
        let mut walk = Vec::new();
        let mut e = start;
        loop {
            used.insert(e, true);
            walk.push(e);
            let (u, v) = e;
            let nb = &rot[v];
            let k = pos[&(v, u)];
            let w = nb[(k + nb.len() - 1) % nb.len()];
            e = (v, w);
            if e == start {
                break;
            }
        }
        out.push(walk);
    }
    let outer_face = (0..out.len()).min_by(|&a, &b| walk_area(g, &out[a]).cmp(&walk_area(g, &out[b])));
    let (components, nontrivial) = component_counts(g);
    FaceSet { faces: out, outer_face, components, nontrivial }
}

/// Connected, at least three sites not all on a line, and every bounded face
/// a triangle.
pub fn is_triangulation(g: &DelaunayGraph) -> Result<bool, SpannerError> {
    let fs = faces(g)?;
    if g.len() < 3 || fs.components != 1 {
        return Ok(false);
    }
    let pts = g.sites.points();
    let spread = (2..g.len()).any(|k| orient_x(&pts[0], &pts[1], &pts[k]) != Ordering::Equal);
    if !spread {
        return Ok(false);
    }
    Ok(fs.faces.iter().enumerate().all(|(i, f)| Some(i) == fs.outer_face || f.len() == 3))
}
