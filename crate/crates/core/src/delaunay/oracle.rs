//! Brute-force adjacency from labelled sample grids.
//!
//! Each sample goes to the closest site, ties to the lexicographically
//! smallest one. Two sites are reported adjacent when enough pairs of
//! 4-neighbouring samples carry their two labels.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::SiteSet;
use crate::arith::{filtered, Cert, Interval, Rational, Scalar};
use crate::error::DelaunayError;
use crate::point::{Lift, XPoint};
use crate::shape::ConvexBody;

/// Sample window `[x0, y0, x1, y1]`.
pub type Window = [f64; 4];

/// Labels of a `res x res` grid of cell centres.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleGrid {
    pub window: Window,
    pub res: usize,
    pub labels: Vec<u32>,
}

impl OracleGrid {
    pub fn label(&self, col: usize, row: usize) -> u32 {
        self.labels[row * self.res + col]
    }

    pub fn step(&self) -> [f64; 2] {
        let w = self.window;
        [(w[2] - w[0]) / self.res as f64, (w[3] - w[1]) / self.res as f64]
    }

    pub fn center(&self, col: usize, row: usize) -> [f64; 2] {
        let h = self.step();
        [self.window[0] + (col as f64 + 0.5) * h[0], self.window[1] + (row as f64 + 0.5) * h[1]]
    }
}

/// Settings of the refined oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleOptions {
    pub resolution: usize,
    /// Differently labelled neighbours are bisected until they are closer
    /// than the base sample spacing divided by `2^refine_depth`.
    pub refine_depth: u32,
    /// Samples per side of a zoom window around a junction.
    pub zoom_res: usize,
    pub zoom_depth: u32,
    /// Enlargement factors of the outer windows, sampled at a quarter of
    /// the resolution.
    pub outer_scales: Vec<f64>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            resolution: 1024,
            refine_depth: 12,
            zoom_res: 64,
            zoom_depth: 3,
            outer_scales: alloc::vec![4.0, 16.0, 64.0, 256.0, 1024.0, 4096.0],
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct OracleReport {
    pub edges: BTreeSet<(usize, usize)>,
    /// Neighbour-pair counts of the base window.
    pub counts: BTreeMap<(usize, usize), usize>,
    pub zooms: usize,
}

struct Labeller<'a> {
    body: &'a ConvexBody,
    sites: &'a SiteSet,
    /// `a_k . s` per site and body edge.
    c: Vec<f64>,
    ax: Vec<f64>,
    ay: Vec<f64>,
    m: usize,
    scale: f64,
    /// Per body edge `k`, the order of the sites by exact `a_k . s`, equal
    /// values sharing a key.
    key: Vec<u32>,
}

impl<'a> Labeller<'a> {
    fn new(body: &'a ConvexBody, sites: &'a SiteSet) -> Self {
        let ax: Vec<f64> = body.polar().iter().map(|a| a.f[0]).collect();
        let ay: Vec<f64> = body.polar().iter().map(|a| a.f[1]).collect();
        let m = ax.len();
        let mut c = Vec::with_capacity(m * sites.len());
        let mut scale: f64 = 1.0;
        for s in sites.points() {
            for k in 0..m {
                c.push(ax[k] * s.f[0] + ay[k] * s.f[1]);
            }
            scale = scale.max(s.f[0].abs()).max(s.f[1].abs());
        }
        let amax = ax.iter().chain(ay.iter()).fold(0.0f64, |a, v| a.max(v.abs()));
        let mut key = alloc::vec![0u32; m * sites.len()];
        let polar = body.polar();
        for k in 0..m {
            let vals: Vec<Rational> = sites.points().iter().map(|s| polar[k].exact.dot(&s.exact)).collect();
            let mut order: Vec<usize> = (0..vals.len()).collect();
            order.sort_by(|&a, &b| vals[a].cmp(&vals[b]));
            let mut next = 0;
            for (i, &s) in order.iter().enumerate() {
                if i > 0 && vals[s] != vals[order[i - 1]] {
                    next += 1;
                }
                key[s * m + k] = next;
            }
        }
        Labeller { body, sites, c, ax, ay, m, scale: scale * amax.max(1.0), key }
    }

    /// Labels of `count` samples `(x0 + i h, y)`.
    fn row(&self, x0: f64, h: f64, y: f64, out: &mut [u32], cy: &mut Vec<f64>) {
        let m = self.m;
        cy.clear();
        for s in 0..self.sites.len() {
            for k in 0..m {
                cy.push(self.c[s * m + k] - self.ay[k] * y);
            }
        }
        for (i, o) in out.iter_mut().enumerate() {
            let x = x0 + i as f64 * h;
            *o = self.pick(x, y, cy);
        }
    }

    fn pick(&self, x: f64, y: f64, cy: &[f64]) -> u32 {
        let m = self.m;
        let (mut best, mut second, mut arg) = (f64::INFINITY, f64::INFINITY, 0usize);
        for s in 0..self.sites.len() {
            let row = &cy[s * m..(s + 1) * m];
            let mut d = f64::NEG_INFINITY;
            for k in 0..m {
                d = d.max(row[k] - self.ax[k] * x);
            }
            if d < best {
                second = best;
                best = d;
                arg = s;
            } else if d < second {
                second = d;
            }
        }
        let eps = 1e-11 * (self.scale + x.abs() + y.abs() + best.abs());
        if second - best > eps {
            return arg as u32;
        }
        let near: Vec<usize> = (0..self.sites.len())
            .filter(|&s| {
                let row = &cy[s * m..(s + 1) * m];
                let d = (0..m).map(|k| row[k] - self.ax[k] * x).fold(f64::NEG_INFINITY, f64::max);
                d <= best + eps
            })
            .collect();
        self.resolve(x, y, &near) as u32
    }

    /// Closest of `near` to `(x, y)` under exact comparison, ties by rank.
    fn resolve(&self, x: f64, y: f64, near: &[usize]) -> usize {
        let p = XPoint::from_f64(x, y);
        filtered(|| self.closest_fast(&p, near), || self.closest::<Rational>(&p, near))
    }

    /// Interval version that settles ties between sites sharing their
    /// active body edge, where the difference of distances does not depend
    /// on the point.
    fn closest_fast(&self, p: &XPoint, near: &[usize]) -> Cert<usize> {
        let x = &p.fast;
        let polar = self.body.polar();
        let active = |s: usize| -> Cert<(usize, Interval)> {
            let z = self.sites.point(s).fast.sub(x);
            let vals: Vec<Interval> = polar.iter().map(|a| a.fast.dot(&z)).collect();
            let k = (0..vals.len()).max_by(|&a, &b| vals[a].lo().total_cmp(&vals[b].lo())).expect("nonempty body");
            if (0..vals.len()).any(|j| j != k && vals[j].hi() >= vals[k].lo()) {
                return Err(crate::arith::Uncertain);
            }
            Ok((k, vals[k]))
        };
        let mut best = near[0];
        let (mut bk, mut bd) = active(best)?;
        for &s in &near[1..] {
            let (k, d) = active(s)?;
            let ord = if k == bk {
                self.key[s * self.m + k].cmp(&self.key[best * self.m + k])
            } else {
                d.cmp_to(&bd)?
            };
            let better = match ord {
                Ordering::Less => true,
                Ordering::Equal => self.sites.rank(s) < self.sites.rank(best),
                Ordering::Greater => false,
            };
            if better {
                best = s;
                bk = k;
                bd = d;
            }
        }
        Ok(best)
    }

    fn closest<S: Lift>(&self, p: &XPoint, near: &[usize]) -> Cert<usize> {
        let x = S::lift(p);
        let dist = |k: usize| self.body.gauge::<S>(&S::lift(self.sites.point(k)).sub(&x));
        let mut best = near[0];
        let mut bd = dist(best);
        for &k in &near[1..] {
            let d = dist(k);
            match d.cmp_to(&bd)? {
                Ordering::Less => {}
                Ordering::Equal if self.sites.rank(k) < self.sites.rank(best) => {}
                _ => continue,
            }
            best = k;
            bd = d;
        }
        Ok(best)
    }

    fn label_at(&self, x: f64, y: f64) -> u32 {
        let m = self.m;
        let (mut best, mut second, mut arg) = (f64::INFINITY, f64::INFINITY, 0usize);
        for s in 0..self.sites.len() {
            let c = &self.c[s * m..(s + 1) * m];
            let mut d = f64::NEG_INFINITY;
            for k in 0..m {
                d = d.max(c[k] - self.ax[k] * x - self.ay[k] * y);
            }
            if d < best {
                second = best;
                best = d;
                arg = s;
            } else if d < second {
                second = d;
            }
        }
        let eps = 1e-11 * (self.scale + x.abs() + y.abs() + best.abs());
        if second - best > eps {
            return arg as u32;
        }
        let mut cy = Vec::new();
        let mut out = [0u32];
        self.row(x, 0.0, y, &mut out, &mut cy);
        out[0]
    }

    fn grid(&self, window: Window, res: usize) -> OracleGrid {
        let h = [(window[2] - window[0]) / res as f64, (window[3] - window[1]) / res as f64];
        let mut labels = alloc::vec![0u32; res * res];
        let mut cy = Vec::new();
        for (r, row) in labels.chunks_mut(res).enumerate() {
            let y = window[1] + (r as f64 + 0.5) * h[1];
            self.row(window[0] + 0.5 * h[0], h[0], y, row, &mut cy);
        }
        OracleGrid { window, res, labels }
    }

    /// Label pairs met between two samples, found by bisection.
    fn crossings(&self, a: [f64; 2], la: u32, b: [f64; 2], lb: u32, min_len: f64, out: &mut Vec<(u32, u32)>) {
        if la == lb {
            return;
        }
        if (b[0] - a[0]).abs() + (b[1] - a[1]).abs() <= min_len {
            out.push((la.min(lb), la.max(lb)));
            return;
        }
        let mid = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
        let lm = self.label_at(mid[0], mid[1]);
        self.crossings(a, la, mid, lm, min_len, out);
        self.crossings(mid, lm, b, lb, min_len, out);
    }
}

fn pair(a: u32, b: u32) -> (usize, usize) {
    (a.min(b) as usize, a.max(b) as usize)
}

/// Plain oracle: neighbour-pair counts on one grid, thresholded at
/// `resolution / 64`.
pub fn sampled_voronoi_oracle(
    body: &ConvexBody,
    sites: &SiteSet,
    resolution: usize,
    window: Window,
) -> Result<BTreeSet<(usize, usize)>, DelaunayError> {
    if resolution < 64 {
        return Err(DelaunayError::ResolutionTooLow(resolution));
    }
    let grid = Labeller::new(body, sites).grid(window, resolution);
    let counts = neighbour_counts(&grid);
    let threshold = resolution / 64;
    Ok(counts.into_iter().filter(|&(_, c)| c >= threshold).map(|(p, _)| p).collect())
}

fn neighbour_counts(g: &OracleGrid) -> BTreeMap<(usize, usize), usize> {
    let mut counts = BTreeMap::new();
    let r = g.res;
    for row in 0..r {
        for col in 0..r {
            let l = g.label(col, row);
            if col + 1 < r && g.label(col + 1, row) != l {
                *counts.entry(pair(l, g.label(col + 1, row))).or_insert(0) += 1;
            }
            if row + 1 < r && g.label(col, row + 1) != l {
                *counts.entry(pair(l, g.label(col, row + 1))).or_insert(0) += 1;
            }
        }
    }
    counts
}

/// Grid of the oracle over a window, for rendering and shape checks.
pub fn oracle_window(body: &ConvexBody, sites: &SiteSet, window: Window, res: usize) -> OracleGrid {
    Labeller::new(body, sites).grid(window, res)
}

/// Refined counts over one window: every differing neighbour pair is
/// bisected, and 2x2 blocks showing three or more labels are zoomed into.
#[allow(clippy::too_many_arguments)]
fn refined(
    lab: &Labeller,
    window: Window,
    res: usize,
    threshold: usize,
    min_len: f64,
    skip: Option<Window>,
    opts: &OracleOptions,
    depth: u32,
    rep: &mut OracleReport,
    base: bool,
) {
    let g = lab.grid(window, res);
    let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut buf = Vec::new();
    let mut junctions: Vec<(usize, usize)> = Vec::new();
    for row in 0..res {
        for col in 0..res {
            let l = g.label(col, row);
            for (c2, r2) in [(col + 1, row), (col, row + 1)] {
                if c2 >= res || r2 >= res {
                    continue;
                }
                let l2 = g.label(c2, r2);
                if l2 == l {
                    continue;
                }
                buf.clear();
                lab.crossings(g.center(col, row), l, g.center(c2, r2), l2, min_len, &mut buf);
                buf.sort_unstable();
                buf.dedup();
                for &(a, b) in &buf {
                    *counts.entry(pair(a, b)).or_insert(0) += 1;
                }
            }
            if col + 1 < res && row + 1 < res {
                let mut ls = [l, g.label(col + 1, row), g.label(col, row + 1), g.label(col + 1, row + 1)];
                ls.sort_unstable();
                let distinct = 1 + ls.windows(2).filter(|w| w[0] != w[1]).count();
                let (lo, hi) = (g.center(col, row), g.center(col + 1, row + 1));
                let inside = skip.is_some_and(|w| hi[0] > w[0] && lo[0] < w[2] && hi[1] > w[1] && lo[1] < w[3]);
                if distinct >= 3 && !inside {
                    junctions.push((col, row));
                }
            }
        }
    }
    for (&p, &c) in &counts {
        if c >= threshold {
            rep.edges.insert(p);
        }
    }
    if base {
        rep.counts = counts;
    }
    if depth >= opts.zoom_depth || (skip.is_some() && depth == 0) {
        return;
    }
    for cluster in clusters(&junctions) {
        let (sx, sy, k) = cluster.iter().fold((0.0, 0.0, 0.0), |a, &(c, r)| (a.0 + c as f64, a.1 + r as f64, a.2 + 1.0));
        let h = g.step();
        let cx = g.window[0] + (sx / k + 1.0) * h[0];
        let cy = g.window[1] + (sy / k + 1.0) * h[1];
        let (ex, ey) = cluster.iter().fold((0usize, 0usize), |a, &(c, r)| {
            let (c0, r0) = cluster[0];
            (a.0.max(c.abs_diff(c0)), a.1.max(r.abs_diff(r0)))
        });
        let half = [(ex as f64 + 2.0) * h[0], (ey as f64 + 2.0) * h[1]];
        let half = half[0].max(half[1] * h[0] / h[1]).max(2.0 * h[0]);
        let half = [half, half * h[1] / h[0]];
        rep.zooms += 1;
        let zoom = [cx - half[0], cy - half[1], cx + half[0], cy + half[1]];
        refined(lab, zoom, opts.zoom_res, (opts.zoom_res / 16).max(2), min_len, skip, opts, depth + 1, rep, false);
    }
}

/// Groups of touching grid blocks.
fn clusters(blocks: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let mut seen = alloc::vec![false; blocks.len()];
    let mut out = Vec::new();
    for s in 0..blocks.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut group = alloc::vec![blocks[s]];
        let mut i = 0;
        while i < group.len() {
            let (c, r) = group[i];
            for (t, &(c2, r2)) in blocks.iter().enumerate() {
                if !seen[t] && c.abs_diff(c2) <= 1 && r.abs_diff(r2) <= 1 {
                    seen[t] = true;
                    group.push((c2, r2));
                }
            }
            i += 1;
        }
        out.push(group);
    }
    out
}

/// Square window around the sites with a margin of half their spread.
pub fn default_window(sites: &SiteSet) -> Window {
    let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
    for s in sites.points() {
        b[0] = b[0].min(s.f[0]);
        b[1] = b[1].min(s.f[1]);
        b[2] = b[2].max(s.f[0]);
        b[3] = b[3].max(s.f[1]);
    }
    let size = (b[2] - b[0]).max(b[3] - b[1]).max(1.0);
    let c = [(b[0] + b[2]) / 2.0, (b[1] + b[3]) / 2.0];
    let half = size;
    [c[0] - half, c[1] - half, c[0] + half, c[1] + half]
}

fn scaled(w: Window, f: f64) -> Window {
    let c = [(w[0] + w[2]) / 2.0, (w[1] + w[3]) / 2.0];
    let h = [(w[2] - w[0]) / 2.0 * f, (w[3] - w[1]) / 2.0 * f];
    [c[0] - h[0], c[1] - h[1], c[0] + h[0], c[1] + h[1]]
}

/// Refined oracle over the default window and the outer windows.
pub fn oracle_edges(body: &ConvexBody, sites: &SiteSet, opts: &OracleOptions) -> Result<OracleReport, DelaunayError> {
    if opts.resolution < 64 {
        return Err(DelaunayError::ResolutionTooLow(opts.resolution));
    }
    let mut rep = OracleReport::default();
    if sites.len() < 2 {
        return Ok(rep);
    }
    let lab = Labeller::new(body, sites);
    let w = default_window(sites);
    // Samples off the rational lines that degenerate inputs like to sit on.
    let h = (w[2] - w[0]) / opts.resolution as f64;
    let (dx, dy) = (0.309_016_994_374_947_4 * h, 0.141_592_653_589_793_2 * h);
    let w = [w[0] + dx, w[1] + dy, w[2] + dx, w[3] + dy];
    let min_len = (w[2] - w[0]) / opts.resolution as f64 / libm::exp2(opts.refine_depth as f64);
    refined(&lab, w, opts.resolution, opts.resolution / 64, min_len, None, opts, 0, &mut rep, true);
    let outer = (opts.resolution / 4).max(64);
    for &f in &opts.outer_scales {
        refined(&lab, scaled(w, f), outer, outer / 64, min_len, Some(w), opts, 0, &mut rep, false);
    }
    Ok(rep)
}

/// Samples `s` labelled `p` for which some sample on the segment from `s`
/// to `p` carries another label and is not next to a `p` sample. Every
/// `stride`-th sample in each direction is checked.
pub fn star_shape_violations(sites: &SiteSet, grid: &OracleGrid, stride: usize) -> Vec<[usize; 2]> {
    let h = grid.step();
    let r = grid.res as isize;
    let near_p = |c: isize, rr: isize, p: u32| -> bool {
        for dr in -1..=1 {
            for dc in -1..=1 {
                let (c2, r2) = (c + dc, rr + dr);
                if c2 >= 0 && r2 >= 0 && c2 < r && r2 < r && grid.label(c2 as usize, r2 as usize) == p {
                    return true;
                }
            }
        }
        false
    };
    let mut out = Vec::new();
    for row in (0..grid.res).step_by(stride.max(1)) {
        for col in (0..grid.res).step_by(stride.max(1)) {
            let p = grid.label(col, row);
            let s = grid.center(col, row);
            let t = sites.point(p as usize).f;
            let steps = libm::ceil(((t[0] - s[0]) / h[0]).abs().max(((t[1] - s[1]) / h[1]).abs()) * 2.0) as usize;
            for k in 1..=steps {
                let f = k as f64 / steps as f64;
                let x = [s[0] + f * (t[0] - s[0]), s[1] + f * (t[1] - s[1])];
                let c = libm::floor((x[0] - grid.window[0]) / h[0]) as isize;
                let rr = libm::floor((x[1] - grid.window[1]) / h[1]) as isize;
                if c < 0 || rr < 0 || c >= r || rr >= r {
                    break;
                }
                if grid.label(c as usize, rr as usize) != p && !near_p(c, rr, p) {
                    out.push([col, row]);
                    break;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delaunay::build_delaunay;
    use crate::shape::{equilateral_triangle, square};

    fn edges_of(body: &ConvexBody, s: &SiteSet) -> BTreeSet<(usize, usize)> {
        build_delaunay(body, s).edges.into_iter().collect()
    }

    #[test]
    fn two_sites_one_edge() {
        let s = SiteSet::from_f64(&[[0.0, 0.0], [1.0, 2.0]]).unwrap();
        for res in [64, 128, 256] {
            let e = sampled_voronoi_oracle(&square(), &s, res, [-3.0, -3.0, 4.0, 5.0]).unwrap();
            assert_eq!(e.into_iter().collect::<Vec<_>>(), [(0, 1)]);
        }
        assert_eq!(
            sampled_voronoi_oracle(&square(), &s, 32, [0.0, 0.0, 1.0, 1.0]),
            Err(DelaunayError::ResolutionTooLow(32))
        );
    }

    #[test]
    fn triangle_matches_builder() {
        let s = SiteSet::from_f64(&[[0.0, 0.0], [5.0, 1.0], [2.0, 4.0]]).unwrap();
        for body in [square(), equilateral_triangle()] {
            let e = sampled_voronoi_oracle(&body, &s, 512, [-5.0, -5.0, 10.0, 10.0]).unwrap();
            assert_eq!(e, edges_of(&body, &s));
            let opts = OracleOptions { resolution: 256, ..Default::default() };
            assert_eq!(oracle_edges(&body, &s, &opts).unwrap().edges, edges_of(&body, &s));
        }
    }

    #[test]
    fn cells_are_star_shaped_around_their_sites() {
        let s = SiteSet::from_f64(&[[0.0, 0.0], [5.0, 1.0], [2.0, 4.0], [3.0, 2.0], [-1.0, 3.0]]).unwrap();
        let g = oracle_window(&equilateral_triangle(), &s, [-4.0, -4.0, 8.0, 8.0], 128);
        assert!(star_shape_violations(&s, &g, 3).is_empty());
    }
}
