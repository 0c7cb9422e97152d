//! Edge test for a pair of sites.
//!
//! Along each straight piece of the two-site bisector the other sites cut
//! out closed parameter windows where they are at least as close as the
//! pair. Strict windows are removed; windows where a site ties the pair on a
//! whole interval are kept as tie intervals. On every remaining open
//! sub-interval the owners of the two sides are decided from first-order
//! growth rates at an interior point.

use alloc::vec::Vec;
use core::cmp::Ordering;

use super::bisector::{bisector, candidate_kinds, clip, interior_param, line_of, Line, PieceKind};
use super::labels::{active_general, pick_label};
use super::SiteSet;
use crate::arith::{rat, Cert, Interval, Rational, Scalar, Uncertain};
use crate::error::DelaunayError;
use crate::point::{Lift, Pt, XPoint};
use crate::shape::{ConvexBody, Homothet};

/// How a site beats the pair on an interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strictness {
    /// Strictly closer than both sites.
    Strict,
    /// Equally close, and lexicographically smaller than both sites.
    TieLexLoses,
}

/// Parameter interval of a bisector piece on which another site beats the
/// pair.
#[derive(Debug, Clone, PartialEq)]
pub struct DominationInterval {
    pub piece_index: usize,
    /// `None` is unbounded.
    pub t_lo: Option<Rational>,
    pub t_hi: Option<Rational>,
    pub dominator: usize,
    pub strictness: Strictness,
}

/// Set of parameters where site `r` is at least as close as the pair.
enum Window<S> {
    Empty,
    Range { lo: Option<S>, hi: Option<S>, tie: bool },
}

/// Slopes of `a_j . (r - x) - lambda` along a piece, which do not depend
/// on `r`: `-(a_j - a_h) . d` when edge `h` is active for p on the piece.
fn slopes<S: Lift>(body: &ConvexBody, line: &Line<S>) -> Vec<S> {
    let ah = body.polar().get(line.hint_p).map(S::lift);
    body.polar()
        .iter()
        .enumerate()
        .map(|(j, a)| {
            let a = S::lift(a);
            match &ah {
                _ if line.flat.contains(&j) => S::zero(),
                Some(ah) => -a.sub(ah).dot(&line.d),
                None => -a.dot(&line.d) - line.lam1.clone(),
            }
        })
        .collect()
}

fn window<S: Lift>(body: &ConvexBody, line: &Line<S>, betas: &[S], r: &Pt<S>) -> Cert<Window<S>> {
    let z = r.sub(&line.p0);
    let (mut lo, mut hi) = (None, None);
    let mut tie = false;
    for (a, beta) in body.polar().iter().zip(betas) {
        let alpha = S::lift(a).dot(&z) - line.lam0.clone();
        if beta.sign()? == Ordering::Equal && alpha.sign()? == Ordering::Equal {
            tie = true;
            continue;
        }
        if !clip(&mut lo, &mut hi, -alpha, -beta.clone())? {
            return Ok(Window::Empty);
        }
    }
    if let (Some(a), Some(b)) = (&lo, &hi) {
        if a.cmp_to(b)? == Ordering::Greater {
            return Ok(Window::Empty);
        }
    }
    Ok(Window::Range { lo, hi, tie })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum B {
    NegInf,
    PosInf,
    V(usize),
}

struct Vals<S> {
    v: Vec<S>,
}

impl<S: Scalar> Vals<S> {
    fn push(&mut self, x: Option<S>, neg: bool) -> B {
        match x {
            None if neg => B::NegInf,
            None => B::PosInf,
            Some(x) => {
                self.v.push(x);
                B::V(self.v.len() - 1)
            }
        }
    }

    fn cmp(&self, a: B, b: B) -> Cert<Ordering> {
        use B::*;
        Ok(match (a, b) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (PosInf, _) | (_, NegInf) => Ordering::Greater,
            (V(i), V(j)) if i == j => Ordering::Equal,
            (V(i), V(j)) => self.v[i].cmp_to(&self.v[j])?,
        })
    }

    fn get(&self, b: B) -> Option<S> {
        match b {
            B::V(i) => Some(self.v[i].clone()),
            _ => None,
        }
    }

    fn approx(&self, b: B) -> f64 {
        match b {
            B::NegInf => f64::NEG_INFINITY,
            B::PosInf => f64::INFINITY,
            B::V(i) => self.v[i].approx(),
        }
    }
}

/// Remove the open interval `(a, b)` from a sorted list of open intervals.
fn subtract<S: Scalar>(vals: &Vals<S>, alive: &mut Vec<(B, B)>, a: B, b: B) -> Cert<()> {
    let mut out = Vec::with_capacity(alive.len() + 1);
    for &(l, h) in alive.iter() {
        if vals.cmp(b, l)? != Ordering::Greater || vals.cmp(a, h)? != Ordering::Less {
            out.push((l, h));
            continue;
        }
        if vals.cmp(l, a)? == Ordering::Less {
            out.push((l, a));
        }
        if vals.cmp(b, h)? == Ordering::Less {
            out.push((b, h));
        }
    }
    *alive = out;
    Ok(())
}

fn sort_unique<S: Scalar>(vals: &Vals<S>, pts: &mut Vec<B>) -> Cert<()> {
    for i in 1..pts.len() {
        let mut k = i;
        while k > 0 && vals.cmp(pts[k - 1], pts[k])? == Ordering::Greater {
            pts.swap(k - 1, k);
            k -= 1;
        }
    }
    let mut out: Vec<B> = Vec::with_capacity(pts.len());
    for &p in pts.iter() {
        match out.last() {
            Some(&l) if vals.cmp(l, p)? == Ordering::Equal => {}
            _ => out.push(p),
        }
    }
    *pts = out;
    Ok(())
}

/// Floating-point view of a piece, used to skip far competitors.
struct Approx {
    p0: [f64; 2],
    d: [f64; 2],
    lam0: f64,
    lam1: f64,
    rb: [f64; 4],
}

impl Approx {
    fn new<S: Scalar>(body: &ConvexBody, line: &Line<S>) -> Approx {
        Approx {
            p0: line.p0.approx(),
            d: line.d.approx(),
            lam0: line.lam0.approx(),
            lam1: line.lam1.approx(),
            rb: body.ray_bounds(),
        }
    }

    /// Bounding box of all homothets centred on the piece for `t` in
    /// `[lo, hi]`, widened by a safety margin.
    fn bbox(&self, lo: f64, hi: f64) -> Option<[f64; 4]> {
        if !(lo.is_finite() && hi.is_finite()) {
            return None;
        }
        let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
        for t in [lo, hi] {
            let c = [self.p0[0] + t * self.d[0], self.p0[1] + t * self.d[1]];
            let s = (self.lam0 + self.lam1 * t).max(0.0);
            b[0] = b[0].min(c[0] + s * self.rb[0]);
            b[1] = b[1].min(c[1] + s * self.rb[1]);
            b[2] = b[2].max(c[0] + s * self.rb[2]);
            b[3] = b[3].max(c[1] + s * self.rb[3]);
        }
        let size = (b[2] - b[0]).abs() + (b[3] - b[1]).abs() + b.iter().map(|v| v.abs()).fold(0.0, f64::max) + 1.0;
        let m = 1e-7 * size;
        let b = [b[0] - m, b[1] - m, b[2] + m, b[3] + m];
        if b.iter().all(|v| v.is_finite()) {
            Some(b)
        } else {
            None
        }
    }
}

/// Undominated open sub-interval of a piece whose sides belong to the pair.
struct Found<S> {
    kind: PieceKind,
    lo: Option<S>,
    hi: Option<S>,
    t: S,
}

fn search_piece<S: Lift>(
    body: &ConvexBody,
    sites: &SiteSet,
    i: usize,
    j: usize,
    order: &[usize],
    kind: PieceKind,
) -> Cert<Option<Found<S>>> {
    let p = S::lift(sites.point(i));
    let q = S::lift(sites.point(j));
    let Some(line) = line_of(body, &p, &q, kind)? else { return Ok(None) };
    let approx = Approx::new(body, &line);
    let betas = slopes(body, &line);
    let mut vals = Vals { v: Vec::new() };
    let lo = vals.push(line.lo.clone(), true);
    let hi = vals.push(line.hi.clone(), false);
    let mut alive = alloc::vec![(lo, hi)];
    let mut ties: Vec<(usize, B, B)> = Vec::new();
    let mut cuts: Vec<B> = Vec::new();
    for &r in order {
        if alive.is_empty() {
            return Ok(None);
        }
        let (a_lo, a_hi) = (alive[0].0, alive[alive.len() - 1].1);
        if let Some(b) = approx.bbox(vals.approx(a_lo), vals.approx(a_hi)) {
            let f = sites.point(r).f;
            if f[0] < b[0] || f[0] > b[2] || f[1] < b[1] || f[1] > b[3] {
                continue;
            }
        }
        let Window::Range { lo, hi, tie } = window(body, &line, &betas, &S::lift(sites.point(r)))? else { continue };
        let a = vals.push(lo, true);
        let b = vals.push(hi, false);
        if vals.cmp(a, b)? == Ordering::Equal {
            cuts.push(a);
        } else if tie {
            ties.push((r, a, b));
            cuts.push(a);
            cuts.push(b);
        } else {
            subtract(&vals, &mut alive, a, b)?;
        }
    }
    let n = line.d.perp();
    let ni = n.neg();
    for &(l, h) in &alive {
        let mut pts = alloc::vec![l, h];
        for &c in &cuts {
            if vals.cmp(l, c)? == Ordering::Less && vals.cmp(c, h)? == Ordering::Less {
                pts.push(c);
            }
        }
        sort_unique(&vals, &mut pts)?;
        for w in pts.windows(2) {
            let (s_lo, s_hi) = (vals.get(w[0]), vals.get(w[1]));
            let t = interior_param(&s_lo, &s_hi);
            let x = line.at(&t);
            let (ap, aq) = line.actives(body, &p, &q, &x)?;
            let mut cands = alloc::vec![(i, sites.rank(i), ap), (j, sites.rank(j), aq)];
            let tb = vals.push(Some(t.clone()), true);
            for &(r, a, b) in &ties {
                if vals.cmp(a, tb)? == Ordering::Less && vals.cmp(tb, b)? == Ordering::Less {
                    let (_, act) = active_general(body, &S::lift(sites.point(r)), &x)?;
                    cands.push((r, sites.rank(r), act));
                }
            }
            let left = pick_label(body, &n, &cands)?;
            let right = pick_label(body, &ni, &cands)?;
            if (left == i && right == j) || (left == j && right == i) {
                return Ok(Some(Found { kind, lo: s_lo, hi: s_hi, t }));
            }
        }
    }
    Ok(None)
}

fn search<S: Lift>(body: &ConvexBody, sites: &SiteSet, i: usize, j: usize, order: &[usize]) -> Cert<Option<Found<S>>> {
    let kinds = candidate_kinds(body, sites.point(i).f, sites.point(j).f);
    for kind in kinds {
        if let Some(f) = search_piece::<S>(body, sites, i, j, order, kind)? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Competitors sorted by distance to the midpoint of the pair.
fn competitors(sites: &SiteSet, i: usize, j: usize) -> Vec<usize> {
    let (a, b) = (sites.point(i).f, sites.point(j).f);
    let m = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
    let d = |k: usize| {
        let f = sites.point(k).f;
        let (dx, dy) = (f[0] - m[0], f[1] - m[1]);
        dx * dx + dy * dy
    };
    let mut order: Vec<usize> = (0..sites.len()).filter(|&k| k != i && k != j).collect();
    order.sort_by(|&x, &y| d(x).total_cmp(&d(y)).then(x.cmp(&y)));
    order
}

/// Whether no site is strictly closer to `x` than `lambda`, with the pair at
/// distance exactly `lambda`.
pub(crate) fn empty_homothet(body: &ConvexBody, sites: &SiteSet, i: usize, j: usize, h: &Homothet) -> bool {
    let c = XPoint::new(h.center.clone());
    let lam_i = Interval::enclose(&h.scale);
    for k in 0..sites.len() {
        let s = sites.point(k);
        let on = k == i || k == j;
        let fast = || -> Cert<bool> {
            let g = body.gauge::<Interval>(&s.fast.sub(&c.fast));
            let sg = (g - lam_i).sign()?;
            Ok(if on { sg == Ordering::Equal } else { sg != Ordering::Less })
        };
        let ok = match fast() {
            Ok(v) => v,
            Err(Uncertain) => {
                let g = body.distance(&h.center, &s.exact);
                if on {
                    g == h.scale
                } else {
                    g >= h.scale
                }
            }
        };
        if !ok {
            return false;
        }
    }
    true
}

fn exact_witness(body: &ConvexBody, sites: &SiteSet, i: usize, j: usize, f: &Found<Rational>) -> Homothet {
    let line = line_of::<Rational>(body, &sites.point(i).exact, &sites.point(j).exact, f.kind)
        .expect("exact")
        .expect("non-empty piece");
    Homothet { center: line.at(&f.t), scale: line.lambda(&f.t) }
}

/// Witness from an interval-arithmetic result: a double strictly inside the
/// sub-interval, checked exactly.
fn interval_witness(body: &ConvexBody, sites: &SiteSet, i: usize, j: usize, f: &Found<Interval>) -> Option<Homothet> {
    let t = match (&f.lo, &f.hi) {
        (Some(a), Some(b)) => (a.approx() + b.approx()) / 2.0,
        (Some(a), None) => a.hi() + 1.0,
        (None, Some(b)) => b.lo() - 1.0,
        (None, None) => 0.0,
    };
    if !t.is_finite() {
        return None;
    }
    let ti = Interval::point(t);
    if let Some(a) = &f.lo {
        if a.cmp_to(&ti) != Ok(Ordering::Less) {
            return None;
        }
    }
    if let Some(b) = &f.hi {
        if ti.cmp_to(b) != Ok(Ordering::Less) {
            return None;
        }
    }
    let line = line_of::<Rational>(body, &sites.point(i).exact, &sites.point(j).exact, f.kind).ok()??;
    let t = rat(t);
    let h = Homothet { center: line.at(&t), scale: line.lambda(&t) };
    empty_homothet(body, sites, i, j, &h).then_some(h)
}

/// Whether sites `i` and `j` are adjacent, with an empty homothet having
/// both on its boundary when they are.
pub fn edge_exists(body: &ConvexBody, sites: &SiteSet, i: usize, j: usize) -> Result<Option<Homothet>, DelaunayError> {
    if i == j {
        return Err(DelaunayError::CoincidentSites(i, j));
    }
    let order = competitors(sites, i, j);
    if let Ok(found) = search::<Interval>(body, sites, i, j, &order) {
        match found {
            None => return Ok(None),
            Some(f) => {
                if let Some(h) = interval_witness(body, sites, i, j, &f) {
                    return Ok(Some(h));
                }
            }
        }
    }
    let found = search::<Rational>(body, sites, i, j, &order).expect("exact arithmetic decides every predicate");
    Ok(found.map(|f| exact_witness(body, sites, i, j, &f)))
}

/// Intervals on the pieces of the bisector of sites `i` and `j` where some
/// other site beats the pair, computed exactly. Piece indices refer to
/// [`bisector`]'s output.
pub fn domination_intervals(
    body: &ConvexBody,
    sites: &SiteSet,
    i: usize,
    j: usize,
) -> Result<Vec<DominationInterval>, DelaunayError> {
    let bis = bisector(body, &sites.point(i).exact, &sites.point(j).exact)?;
    let min_rank = sites.rank(i).min(sites.rank(j));
    let mut out = Vec::new();
    for (idx, piece) in bis.pieces.iter().enumerate() {
        let line = Line {
            p0: piece.point.clone(),
            d: piece.direction.clone(),
            lam0: piece.lambda0.clone(),
            lam1: piece.lambda1.clone(),
            lo: piece.t_lo.clone(),
            hi: piece.t_hi.clone(),
            hint_p: usize::MAX,
            hint_q: usize::MAX,
            act_p: None,
            act_q: None,
            flat: [usize::MAX; 2],
        };
        let betas = slopes(body, &line);
        for r in 0..sites.len() {
            if r == i || r == j {
                continue;
            }
            let w = window(body, &line, &betas, &sites.point(r).exact).expect("exact");
            let Window::Range { mut lo, mut hi, tie } = w else { continue };
            if tie && sites.rank(r) > min_rank {
                continue;
            }
            if let Some(a) = &line.lo {
                lo = Some(lo.map_or(a.clone(), |v| v.max_of(a)));
            }
            if let Some(b) = &line.hi {
                hi = Some(hi.map_or(b.clone(), |v| v.min_of(b)));
            }
            if let (Some(a), Some(b)) = (&lo, &hi) {
                if a >= b {
                    continue;
                }
            }
            let strictness = if tie { Strictness::TieLexLoses } else { Strictness::Strict };
            out.push(DominationInterval { piece_index: idx, t_lo: lo, t_hi: hi, dominator: r, strictness });
        }
    }
    Ok(out)
}
