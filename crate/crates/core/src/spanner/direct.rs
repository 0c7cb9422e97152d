use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::edge_len;
use crate::arith::{filtered, Cert, Interval, Rational, Uncertain};
use crate::delaunay::labels::{active_general, pick_label, Active};
use crate::delaunay::{DelaunayGraph, SiteSet};
use crate::point::{orient_x, Lift, Pt};
use crate::shape::ConvexBody;

/// The sequence of sites whose cells segment `pq` passes through, with each
/// cell entered once: from the current site, jump to the last point of its
/// cell on `pq` and continue in the cell entered there. Where `pq` meets a
/// Voronoi vertex the segment is read as shifted by an infinitesimal amount
/// to its left.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectPath {
    pub vertices: Vec<usize>,
    /// `x_1 .. x_k`, as parameters `s` of `p + s (q - p)`.
    pub crossing_params: Vec<f64>,
    pub crossing_points: Vec<[f64; 2]>,
    /// `d(x_i, p_i)`.
    pub scales: Vec<f64>,
    /// Parameters of the leftmost and rightmost points of `x_i + scale_i C`
    /// on the line `pq`.
    pub left_ends: Vec<f64>,
    pub right_ends: Vec<f64>,
    /// Interior vertices all strictly on one side of line `pq`.
    pub one_sided: bool,
    pub length: f64,
    /// Every cell change along the shifted segment, as `(site, s)`.
    pub cells: Vec<(usize, f64)>,
}

impl DirectPath {
    /// Crossings strictly increasing and, when one-sided, left and right
    /// ends non-decreasing, up to an absolute slack in `s`.
    pub fn monotone(&self, slack: f64) -> bool {
        let inc = self.crossing_params.windows(2).all(|w| w[0] < w[1] + slack);
        let ends = !self.one_sided
            || (self.left_ends.windows(2).all(|w| w[0] <= w[1] + slack)
                && self.right_ends.windows(2).all(|w| w[0] <= w[1] + slack));
        inc && ends
    }
}

struct Trace<'a, S> {
    body: &'a ConvexBody,
    sites: &'a SiteSet,
    polar: Vec<Pt<S>>,
    pts: Vec<Pt<S>>,
    start: Pt<S>,
    v: Pt<S>,
    /// `-a_j . v`, the slope of edge `j`'s form along the segment.
    b: Vec<S>,
    /// `a_j . (r - p)` per site.
    a: Vec<Vec<S>>,
    q: usize,
    af: Vec<Vec<f64>>,
    bf: Vec<f64>,
}

/// Feasible parameters of a competitor against the current piece.
struct Window<S> {
    lo: Option<S>,
    hi: Option<S>,
}

impl<'a, S: Lift> Trace<'a, S> {
    fn new(body: &'a ConvexBody, sites: &'a SiteSet, p: usize, q: usize) -> Self {
        let polar: Vec<Pt<S>> = body.polar().iter().map(S::lift).collect();
        let pts: Vec<Pt<S>> = sites.points().iter().map(S::lift).collect();
        let start = pts[p].clone();
        let v = pts[q].sub(&start);
        let b: Vec<S> = polar.iter().map(|a| -a.dot(&v)).collect();
        let a: Vec<Vec<S>> = (0..pts.len())
            .map(|r| {
                if r == p {
                    vec![S::zero(); polar.len()]
                } else {
                    let z = pts[r].sub(&start);
                    polar.iter().map(|a| a.dot(&z)).collect()
                }
            })
            .collect();
        let af = a.iter().map(|row: &Vec<S>| row.iter().map(S::approx).collect()).collect();
        let bf = b.iter().map(S::approx).collect();
        Trace { body, sites, polar, pts, start, v, b, a, q, af, bf }
    }

    fn m(&self) -> usize {
        self.polar.len()
    }

    fn val(&self, r: usize, j: usize, s: &S) -> S {
        self.a[r][j].clone() + self.b[j].clone() * s.clone()
    }

    /// Edge of `c`'s distance that is active just after `s`.
    fn active(&self, c: usize, s: Option<&S>) -> Cert<usize> {
        let mut best = 0;
        for j in 1..self.m() {
            let ord = match s {
                None => Ordering::Equal,
                Some(s) => self.val(c, j, s).cmp_to(&self.val(c, best, s))?,
            };
            let ord = match ord {
                Ordering::Equal => self.b[j].cmp_to(&self.b[best])?,
                o => o,
            };
            if ord == Ordering::Greater {
                best = j;
            }
        }
        Ok(best)
    }

    /// End of the linear piece of `c` using edge `j`, and the next edge, or
    /// `None` when the piece reaches `q`.
    fn piece_end(&self, c: usize, j: usize) -> Cert<(S, Option<usize>)> {
        if c == self.q {
            // The distance to q is linear all the way to q.
            return Ok((S::from_i64(1), None));
        }
        let mut best: Option<(S, usize)> = None;
        for k in 0..self.m() {
            if k == j || self.b[k].cmp_to(&self.b[j])? != Ordering::Greater {
                continue;
            }
            let t = (self.a[c][j].clone() - self.a[c][k].clone()).try_div(&(self.b[k].clone() - self.b[j].clone()))?;
            best = match best {
                None => Some((t, k)),
                Some((bt, bk)) => match t.cmp_to(&bt)? {
                    Ordering::Less => Some((t, k)),
                    Ordering::Equal if self.b[k].cmp_to(&self.b[bk])? == Ordering::Greater => Some((t, k)),
                    _ => Some((bt, bk)),
                },
            };
        }
        let one = S::from_i64(1);
        Ok(match best {
            Some((t, k)) if t.cmp_to(&one)? == Ordering::Less => (t, Some(k)),
            _ => (one, None),
        })
    }

    /// Whether `r` is certainly farther than `c` on the whole piece
    /// `[ps, sigma]` of edge `j`, judged by one edge of `r`.
    fn farther(&self, r: usize, c: usize, j: usize, ps: &S, sigma: &S) -> bool {
        let (s0, s1) = (ps.approx(), sigma.approx());
        let mid = 0.5 * (s0 + s1);
        let row = &self.af[r];
        let k = (0..self.m()).max_by(|&x, &y| (row[x] + self.bf[x] * mid).total_cmp(&(row[y] + self.bf[y] * mid))).unwrap_or(0);
        let (ar, ac, bk, bj) = (row[k], self.af[c][j], self.bf[k], self.bf[j]);
        [(ps, s0), (sigma, s1)].iter().all(|(s, sf)| {
            let gap = (ar - ac) + (bk - bj) * sf;
            let scale = ar.abs() + ac.abs() + (bk.abs() + bj.abs()) * sf.abs();
            // The inputs are within a few ulps of the exact values.
            gap > 1e-9 * scale
                || (gap > -1e-9 * scale
                    && matches!((self.val(r, k, s) - self.val(c, j, s)).sign(), Ok(Ordering::Greater)))
        })
    }

    /// Parameters where site `r` is at most as far as `c` on `c`'s piece.
    fn window(&self, r: usize, c: usize, j: usize) -> Cert<Option<Window<S>>> {
        let mut w: Window<S> = Window { lo: None, hi: None };
        for k in 0..self.m() {
            let alpha = self.a[r][k].clone() - self.a[c][j].clone();
            let beta = if k == j { Ordering::Equal } else { self.b[k].cmp_to(&self.b[j])? };
            if beta == Ordering::Equal {
                if alpha.sign()? == Ordering::Greater {
                    return Ok(None);
                }
                continue;
            }
            let t = (-alpha).try_div(&(self.b[k].clone() - self.b[j].clone()))?;
            if beta == Ordering::Greater {
                w.hi = Some(match w.hi {
                    Some(h) if h.cmp_to(&t)? != Ordering::Greater => h,
                    _ => t,
                });
            } else {
                w.lo = Some(match w.lo {
                    Some(l) if l.cmp_to(&t)? != Ordering::Less => l,
                    _ => t,
                });
            }
        }
        if let (Some(l), Some(h)) = (&w.lo, &w.hi) {
            if l.cmp_to(h)? == Ordering::Greater {
                return Ok(None);
            }
        }
        Ok(Some(w))
    }

    /// Owners of the sectors above `x` met by the shifted segment, in order,
    /// among the equally close sites `tied`.
    fn fan(&self, x: &Pt<S>, tied: &[usize]) -> Cert<Vec<usize>> {
        let mut cands: Vec<(usize, usize, Active)> = Vec::new();
        let mut idx: Vec<usize> = Vec::new();
        for &r in tied {
            let (_, act) = active_general(self.body, &self.pts[r], x)?;
            idx.extend_from_slice(act.as_slice());
            cands.push((r, self.sites.rank(r), act));
        }
        idx.sort_unstable();
        idx.dedup();
        let mut dirs: Vec<Pt<S>> = Vec::new();
        for (n, &u) in idx.iter().enumerate() {
            for &w in &idx[n + 1..] {
                let d = self.polar[u].sub(&self.polar[w]).perp();
                for cand in [d.clone(), d.neg()] {
                    if self.v.cross(&cand).sign()? != Ordering::Greater {
                        continue;
                    }
                    // Insert keeping decreasing angle from the segment direction.
                    let mut at = dirs.len();
                    let mut dup = false;
                    for (i, e) in dirs.iter().enumerate() {
                        match e.cross(&cand).sign()? {
                            Ordering::Equal => {
                                dup = true;
                                break;
                            }
                            Ordering::Less => {
                                at = i;
                                break;
                            }
                            Ordering::Greater => {}
                        }
                    }
                    if !dup {
                        dirs.insert(at, cand);
                    }
                }
            }
        }
        let mut bounds = vec![self.v.neg()];
        bounds.extend(dirs);
        bounds.push(self.v.clone());
        let mut out: Vec<usize> = Vec::new();
        for k in 0..bounds.len() - 1 {
            let sample = if bounds.len() == 2 { self.v.perp() } else { bounds[k].add(&bounds[k + 1]) };
            let l = pick_label(self.body, &sample, &cands)?;
            if out.last() != Some(&l) {
                out.push(l);
            }
        }
        Ok(out)
    }

    /// Cell changes along the shifted segment as `(site, s)`.
    fn run(&self, p: usize) -> Cert<Vec<(usize, S)>> {
        let mut seq = vec![(p, S::zero())];
        let mut c = p;
        let mut ps = S::zero();
        let mut j = self.active(p, None)?;
        let mut excl: Vec<usize> = vec![p];
        let mut fresh = true;
        loop {
            let (sigma, next) = self.piece_end(c, j)?;
            let mut best: Option<S> = None;
            let mut trig: Vec<usize> = Vec::new();
            let mut carry: Vec<(usize, Option<S>)> = Vec::new();
            for r in 0..self.pts.len() {
                if r == c || self.farther(r, c, j, &ps, &sigma) {
                    continue;
                }
                let Some(w) = self.window(r, c, j)? else { continue };
                if fresh && excl.contains(&r) {
                    carry.push((r, w.hi));
                    continue;
                }
                let e = match w.lo {
                    Some(lo) if lo.cmp_to(&ps)? == Ordering::Greater => lo,
                    _ => ps.clone(),
                };
                if let Some(h) = &w.hi {
                    if h.cmp_to(&e)? == Ordering::Less {
                        continue;
                    }
                }
                if e.cmp_to(&sigma)? == Ordering::Greater {
                    continue;
                }
                match &best {
                    None => {
                        best = Some(e);
                        trig = vec![r];
                    }
                    Some(b) => match e.cmp_to(b)? {
                        Ordering::Less => {
                            best = Some(e);
                            trig = vec![r];
                        }
                        Ordering::Equal => trig.push(r),
                        Ordering::Greater => {}
                    },
                }
            }
            let Some(e) = best else {
                match next {
                    None => return Ok(seq),
                    Some(k) => {
                        ps = sigma;
                        j = k;
                        fresh = false;
                        continue;
                    }
                }
            };
            let x = self.start.along(&self.v, &e);
            let mut tied = vec![c];
            tied.extend(trig);
            for (r, hi) in carry {
                let keep = match &hi {
                    None => true,
                    Some(h) => h.cmp_to(&e)? != Ordering::Less,
                };
                if keep {
                    tied.push(r);
                }
            }
            let labels = self.fan(&x, &tied)?;
            if labels[0] != c {
                return Err(Uncertain);
            }
            for &l in &labels[1..] {
                seq.push((l, e.clone()));
            }
            c = *labels.last().expect("nonempty");
            j = self.active(c, Some(&e))?;
            ps = e;
            excl = tied;
            fresh = true;
        }
    }

    fn finish(&self, p: usize, q: usize, seq: &[(usize, S)]) -> DirectPath {
        let mut vertices = vec![p];
        let mut params = Vec::new();
        let mut scales = Vec::new();
        let mut k = 0;
        while vertices.last() != Some(&q) {
            let cur = *vertices.last().expect("nonempty");
            k = (k..seq.len()).rev().find(|&i| seq[i].0 == cur).expect("current site is on the sequence");
            assert!(k + 1 < seq.len(), "direct path stalls before q");
            let (next, s) = (&seq[k + 1].0, &seq[k + 1].1);
            let x = self.start.along(&self.v, s);
            scales.push(self.body.gauge::<S>(&self.pts[cur].sub(&x)).approx());
            params.push(s.approx());
            vertices.push(*next);
            k += 1;
        }
        let pts = self.sites.points();
        let (pf, qf) = (pts[p].f, pts[q].f);
        let v = [qf[0] - pf[0], qf[1] - pf[1]];
        let (gl, gr) = (self.body.gauge_f64([-v[0], -v[1]]), self.body.gauge_f64(v));
        let crossing_points = params.iter().map(|s| [pf[0] + s * v[0], pf[1] + s * v[1]]).collect();
        let left_ends = params.iter().zip(&scales).map(|(s, l)| s - l / gl).collect();
        let right_ends = params.iter().zip(&scales).map(|(s, l)| s + l / gr).collect();
        let inner = &vertices[1..vertices.len() - 1];
        let one_sided = match inner.first() {
            None => true,
            Some(&f) => {
                let side = orient_x(&pts[p], &pts[q], &pts[f]);
                side != Ordering::Equal && inner.iter().all(|&r| orient_x(&pts[p], &pts[q], &pts[r]) == side)
            }
        };
        let length = vertices.windows(2).map(|w| edge_len(pts[w[0]].f, pts[w[1]].f)).sum();
        let cells = seq.iter().map(|(r, s)| (*r, s.approx())).collect();
        DirectPath {
            vertices,
            crossing_params: params,
            crossing_points,
            scales,
            left_ends,
            right_ends,
            one_sided,
            length,
            cells,
        }
    }
}

/// Direct path from site `p` to site `q` in the Voronoi diagram of `sites`
/// under `body`. The graph is only used to check that every step is an edge.
pub fn direct_path(body: &ConvexBody, sites: &SiteSet, g: &DelaunayGraph, p: usize, q: usize) -> DirectPath {
    assert!(p != q && p < sites.len() && q < sites.len(), "need two distinct sites");
    let path = filtered(
        || {
            let t = Trace::<Interval>::new(body, sites, p, q);
            t.run(p).map(|seq| t.finish(p, q, &seq))
        },
        || {
            let t = Trace::<Rational>::new(body, sites, p, q);
            t.run(p).map(|seq| t.finish(p, q, &seq))
        },
    );
    debug_assert!(path.vertices.windows(2).all(|w| g.has_edge(w[0], w[1])));
    path
}

/// Whether a one-sided path is at most `kappa |pq|` long, with a relative
/// slack of `1e-9`. Paths that are not one-sided pass.
pub fn one_sided_check(path: &DirectPath, sites: &SiteSet, kappa: f64) -> bool {
    if !path.one_sided {
        return true;
    }
    let (p, q) = (path.vertices[0], *path.vertices.last().expect("nonempty"));
    path.length <= kappa * edge_len(sites.point(p).f, sites.point(q).f) * (1.0 + 1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delaunay::build_delaunay;
    use crate::shape::square;

    #[test]
    fn adjacent_pair_is_one_step() {
        let body = square();
        let s = SiteSet::from_f64(&[[0.0, 0.0], [5.0, 1.0], [2.0, 4.0]]).unwrap();
        let g = build_delaunay(&body, &s);
        let d = direct_path(&body, &s, &g, 0, 1);
        assert_eq!(d.vertices, [0, 1]);
        assert_eq!(d.crossing_params.len(), 1);
        assert!(one_sided_check(&d, &s, 1.0));
    }

    #[test]
    fn third_cell_in_between() {
        let body = square();
        let s = SiteSet::from_f64(&[[0.0, 0.0], [10.0, 0.0], [5.0, 1.0]]).unwrap();
        let g = build_delaunay(&body, &s);
        let d = direct_path(&body, &s, &g, 0, 1);
        assert_eq!(d.vertices, [0, 2, 1]);
        assert!(d.one_sided);
        assert!(d.monotone(1e-12));
        assert!((d.left_ends[0]).abs() < 1e-12);
        assert!((d.right_ends[1] - 1.0).abs() < 1e-12);
        let mut bad = d.clone();
        bad.length *= 10.0;
        assert!(!one_sided_check(&bad, &s, 1.0));
    }
}
