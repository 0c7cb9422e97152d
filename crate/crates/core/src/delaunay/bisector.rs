//! Straight pieces of the bisector of two sites.

use alloc::vec::Vec;
use core::cmp::Ordering;

use super::labels::{active_with_hint, pick_label, Active};
use crate::arith::{filtered, Cert, Interval, Rational, Scalar};
use crate::error::DelaunayError;
use crate::point::{Lift, Point, Pt, XPoint};
use crate::shape::ConvexBody;

/// Where a bisector piece comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PieceKind {
    /// `p` is measured through body edge `kp` and `q` through `kq`.
    Cell { kp: usize, kq: usize },
    /// Boundary ray of a two-dimensional region where both sites are
    /// measured through edge `cone` and are equally far. The ray starts at
    /// `p` (or at `q` when `from_q`) and runs along `o - v_vertex`.
    TieRay { cone: usize, vertex: usize, from_q: bool },
}

/// The line `p0 + t d` carrying a piece, the common distance
/// `lam0 + lam1 t` along it, and the parameter range of the piece.
#[derive(Debug, Clone)]
pub(crate) struct Line<S> {
    pub p0: Pt<S>,
    pub d: Pt<S>,
    pub lam0: S,
    pub lam1: S,
    pub lo: Option<S>,
    pub hi: Option<S>,
    pub hint_p: usize,
    pub hint_q: usize,
    /// Active edges of a site when known without computation.
    pub act_p: Option<Active>,
    pub act_q: Option<Active>,
    /// Body edges `j` with `(a_j - a_hint_p) . d = 0` by construction.
    pub flat: [usize; 2],
}

impl<S: Scalar> Line<S> {
    pub fn at(&self, t: &S) -> Pt<S> {
        self.p0.along(&self.d, t)
    }

    pub fn lambda(&self, t: &S) -> S {
        self.lam0.clone() + self.lam1.clone() * t.clone()
    }

    /// Active edges of both sites at a point inside the piece.
    pub fn actives(&self, body: &ConvexBody, p: &Pt<S>, q: &Pt<S>, x: &Pt<S>) -> Cert<(Active, Active)>
    where
        S: Lift,
    {
        let ap = match self.act_p {
            Some(a) => a,
            None => active_with_hint(body, p, x, self.hint_p)?,
        };
        let aq = match self.act_q {
            Some(a) => a,
            None => active_with_hint(body, q, x, self.hint_q)?,
        };
        Ok((ap, aq))
    }
}

/// Constraint `alpha + beta t >= 0` applied to a parameter range.
pub(crate) fn clip<S: Scalar>(lo: &mut Option<S>, hi: &mut Option<S>, alpha: S, beta: S) -> Cert<bool> {
    match beta.sign()? {
        Ordering::Greater => {
            let b = (-alpha).try_div(&beta)?;
            *lo = Some(match lo.take() {
                None => b,
                Some(v) => v.max_of(&b),
            });
        }
        Ordering::Less => {
            let b = (-alpha).try_div(&beta)?;
            *hi = Some(match hi.take() {
                None => b,
                Some(v) => v.min_of(&b),
            });
        }
        Ordering::Equal => {
            if alpha.sign()? == Ordering::Less {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Restrict `z + t dz` to the cone spanned by `w0` and `w1`. A flag marks a
/// ray known to be parallel to `dz`.
fn clip_cone<S: Scalar>(
    lo: &mut Option<S>,
    hi: &mut Option<S>,
    z: &Pt<S>,
    dz: &Pt<S>,
    w: [&Pt<S>; 2],
    parallel: [bool; 2],
) -> Cert<bool> {
    let b0 = if parallel[0] { S::zero() } else { w[0].cross(dz) };
    let b1 = if parallel[1] { S::zero() } else { dz.cross(w[1]) };
    Ok(clip(lo, hi, w[0].cross(z), b0)? && clip(lo, hi, z.cross(w[1]), b1)?)
}

/// Geometry of a piece; `None` when the piece is empty or a single point.
pub(crate) fn line_of<S: Lift>(body: &ConvexBody, p: &Pt<S>, q: &Pt<S>, kind: PieceKind) -> Cert<Option<Line<S>>> {
    let polar = body.polar();
    let rays = body.rays();
    let m = polar.len();
    let w = |k: usize| S::lift(&rays[k % m]);
    let (mut lo, mut hi) = (None, None);
    let line = match kind {
        PieceKind::Cell { kp, kq } => {
            let ak = S::lift(&polar[kp]);
            let al = S::lift(&polar[kq]);
            let n = al.sub(&ak);
            let c = al.dot(q) - ak.dot(p);
            let s = c.try_div(&n.dot(&n))?;
            let p0 = n.scale(&s);
            let d = n.perp();
            let nd = d.neg();
            // A ray shared by both cones is parallel to the piece.
            let shared = |v: usize| v % m == kq || v % m == (kq + 1) % m;
            let sp = [shared(kp), shared(kp + 1)];
            if !clip_cone(&mut lo, &mut hi, &p.sub(&p0), &nd, [&w(kp), &w(kp + 1)], sp)? {
                return Ok(None);
            }
            let shared = |v: usize| v % m == kp || v % m == (kp + 1) % m;
            let sq = [shared(kq), shared(kq + 1)];
            if !clip_cone(&mut lo, &mut hi, &q.sub(&p0), &nd, [&w(kq), &w(kq + 1)], sq)? {
                return Ok(None);
            }
            let lam0 = ak.dot(&p.sub(&p0));
            let lam1 = -ak.dot(&d);
            Line { p0, d, lam0, lam1, lo, hi, hint_p: kp, hint_q: kq, act_p: None, act_q: None, flat: [kp, kq] }
        }
        PieceKind::TieRay { cone, vertex, from_q } => {
            let ak = S::lift(&polar[cone]);
            if ak.dot(&p.sub(q)).sign()? != Ordering::Equal {
                return Ok(None);
            }
            let (start, other) = if from_q { (q, p) } else { (p, q) };
            let wv = w(vertex);
            let d = wv.neg();
            if !clip(&mut lo, &mut hi, S::zero(), S::from_i64(1))? {
                return Ok(None);
            }
            let par = [cone == vertex, (cone + 1) % m == vertex];
            if !clip_cone(&mut lo, &mut hi, &other.sub(start), &wv, [&w(cone), &w(cone + 1)], par)? {
                return Ok(None);
            }
            // The start site sees the ray through a body vertex.
            let mut at_vertex = Active::one((vertex + m - 1) % m);
            at_vertex.push(vertex);
            let (act_p, act_q) = if from_q { (None, Some(at_vertex)) } else { (Some(at_vertex), None) };
            Line {
                p0: start.clone(),
                d,
                lam0: S::zero(),
                lam1: S::from_i64(1),
                lo,
                hi,
                hint_p: cone,
                hint_q: cone,
                act_p,
                act_q,
                flat: [(vertex + m - 1) % m, vertex],
            }
        }
    };
    if let (Some(a), Some(b)) = (&line.lo, &line.hi) {
        if a.cmp_to(b)? != Ordering::Less {
            return Ok(None);
        }
    }
    Ok(Some(line))
}

/// Piece kinds whose geometry may be non-empty, screened in floating point
/// with a safety margin.
pub(crate) fn candidate_kinds(body: &ConvexBody, p: [f64; 2], q: [f64; 2]) -> Vec<PieceKind> {
    let polar: Vec<[f64; 2]> = body.polar().iter().map(|a| a.f).collect();
    let rays: Vec<[f64; 2]> = body.rays().iter().map(|w| w.f).collect();
    let m = polar.len();
    let dot = |a: [f64; 2], b: [f64; 2]| a[0] * b[0] + a[1] * b[1];
    let cross = |a: [f64; 2], b: [f64; 2]| a[0] * b[1] - a[1] * b[0];
    let norm = |a: [f64; 2]| a[0].abs() + a[1].abs();
    let mut out = Vec::new();
    let base = norm(p) + norm(q) + 1.0;
    for kp in 0..m {
        let ak = polar[kp];
        for kq in 0..m {
            let al = polar[kq];
            if kp == kq {
                let tie = dot(ak, [p[0] - q[0], p[1] - q[1]]);
                if tie.abs() <= 1e-9 * norm(ak) * base {
                    for vertex in [kp, (kp + 1) % m] {
                        for from_q in [false, true] {
                            out.push(PieceKind::TieRay { cone: kp, vertex, from_q });
                        }
                    }
                }
                continue;
            }
            let n = [al[0] - ak[0], al[1] - ak[1]];
            let nn = dot(n, n);
            let c = dot(al, q) - dot(ak, p);
            let p0 = [n[0] * c / nn, n[1] * c / nn];
            let d = [-n[1], n[0]];
            let nd = [-d[0], -d[1]];
            let slack = 1e-9 * (base + norm(p0));
            let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
            let mut ok = true;
            let mut cons = |alpha: f64, beta: f64, wn: f64| {
                let alpha = alpha + slack * wn;
                if beta > 0.0 {
                    lo = lo.max(-alpha / beta);
                } else if beta < 0.0 {
                    hi = hi.min(-alpha / beta);
                } else if alpha < 0.0 {
                    ok = false;
                }
            };
            for (s, k) in [(p, kp), (q, kq)] {
                let z = [s[0] - p0[0], s[1] - p0[1]];
                let (w0, w1) = (rays[k], rays[(k + 1) % m]);
                cons(cross(w0, z), cross(w0, nd), norm(w0));
                cons(cross(z, w1), cross(nd, w1), norm(w1));
            }
            let width = 1e-9 * (lo.abs().min(1e300) + hi.abs().min(1e300) + 1.0);
            if ok && lo <= hi + width {
                out.push(PieceKind::Cell { kp, kq });
            }
        }
    }
    out
}

/// One straight piece of a bisector, on the line `point + t direction`.
#[derive(Debug, Clone, PartialEq)]
pub struct BisectorPiece {
    pub kind: PieceKind,
    pub point: Point,
    pub direction: Point,
    /// Parameter range; `None` is unbounded.
    pub t_lo: Option<Rational>,
    pub t_hi: Option<Rational>,
    /// Common distance to both sites is `lambda0 + lambda1 t`.
    pub lambda0: Rational,
    pub lambda1: Rational,
    /// Whether the side to the left of `direction` belongs to `site_a`.
    pub a_on_left: bool,
}

impl BisectorPiece {
    pub fn at(&self, t: &Rational) -> Point {
        self.point.along(&self.direction, t)
    }

    pub fn start(&self) -> Option<Point> {
        self.t_lo.as_ref().map(|t| self.at(t))
    }

    pub fn end(&self) -> Option<Point> {
        self.t_hi.as_ref().map(|t| self.at(t))
    }
}

/// Boundary between the two cells of a two-site diagram, as a chain of
/// straight pieces ordered end to end.
#[derive(Debug, Clone)]
pub struct Bisector {
    pub site_a: Point,
    pub site_b: Point,
    pub pieces: Vec<BisectorPiece>,
    /// Whether consecutive pieces share endpoints.
    pub connected: bool,
}

/// Midpoint of a parameter range (any interior point for unbounded ones).
pub(crate) fn interior_param<S: Scalar>(lo: &Option<S>, hi: &Option<S>) -> S {
    match (lo, hi) {
        (Some(a), Some(b)) => (a.clone() + b.clone()).half(),
        (Some(a), None) => a.clone() + S::from_i64(1),
        (None, Some(b)) => b.clone() - S::from_i64(1),
        (None, None) => S::zero(),
    }
}

/// Side labels of a piece in the two-site diagram: `(left, right)`, `true`
/// meaning the first site.
fn two_site_sides<S: Lift>(body: &ConvexBody, p: &Pt<S>, q: &Pt<S>, line: &Line<S>, ranks: (usize, usize)) -> Cert<(bool, bool)> {
    let t = interior_param(&line.lo, &line.hi);
    let x = line.at(&t);
    let (ap, aq) = line.actives(body, p, q, &x)?;
    let cands = [(0usize, ranks.0, ap), (1usize, ranks.1, aq)];
    let n = line.d.perp();
    let left = pick_label(body, &n, &cands)?;
    let right = pick_label(body, &n.neg(), &cands)?;
    Ok((left == 0, right == 0))
}

/// Bisector of two distinct points.
pub fn bisector(body: &ConvexBody, a: &Point, b: &Point) -> Result<Bisector, DelaunayError> {
    if a == b {
        return Err(DelaunayError::CoincidentSites(0, 1));
    }
    let (xa, xb) = (XPoint::new(a.clone()), XPoint::new(b.clone()));
    let ranks = if (&a.x, &a.y) < (&b.x, &b.y) { (0, 1) } else { (1, 0) };
    let mut pieces = Vec::new();
    for kind in candidate_kinds(body, xa.f, xb.f) {
        let side = filtered(
            || {
                let (p, q) = (Interval::lift(&xa), Interval::lift(&xb));
                match line_of(body, &p, &q, kind)? {
                    None => Ok(None),
                    Some(l) => Ok(Some(two_site_sides(body, &p, &q, &l, ranks)?)),
                }
            },
            || {
                let (p, q) = (Rational::lift(&xa), Rational::lift(&xb));
                match line_of(body, &p, &q, kind)? {
                    None => Ok(None),
                    Some(l) => Ok(Some(two_site_sides(body, &p, &q, &l, ranks)?)),
                }
            },
        );
        let Some((left_a, right_a)) = side else { continue };
        if left_a == right_a {
            continue;
        }
        let l = line_of::<Rational>(body, a, b, kind).unwrap().expect("non-empty piece");
        let piece = BisectorPiece {
            kind,
            point: l.p0,
            direction: l.d,
            t_lo: l.lo,
            t_hi: l.hi,
            lambda0: l.lam0,
            lambda1: l.lam1,
            a_on_left: left_a,
        };
        if !pieces.iter().any(|q| same_segment(q, &piece)) {
            pieces.push(piece);
        }
    }
    let (pieces, connected) = chain(pieces);
    Ok(Bisector { site_a: a.clone(), site_b: b.clone(), pieces, connected })
}

fn same_segment(a: &BisectorPiece, b: &BisectorPiece) -> bool {
    if a.direction.cross(&b.direction) != Rational::zero() {
        return false;
    }
    let (sa, ea, sb, eb) = (a.start(), a.end(), b.start(), b.end());
    let ends = (sa == sb && ea == eb) || (sa == eb && ea == sb);
    if !ends || (sa.is_none() && ea.is_none()) {
        return false;
    }
    // Same endpoints; one-ended pieces must also run the same way.
    let x = a.at(&interior_param(&a.t_lo, &a.t_hi));
    let t = x.sub(&b.point).dot(&b.direction) / b.direction.dot(&b.direction);
    b.t_lo.as_ref().is_none_or(|lo| lo < &t) && b.t_hi.as_ref().is_none_or(|hi| &t < hi)
}

fn reversed(p: &BisectorPiece) -> BisectorPiece {
    BisectorPiece {
        kind: p.kind,
        point: p.point.clone(),
        direction: p.direction.neg(),
        t_lo: p.t_hi.clone().map(|t| -t),
        t_hi: p.t_lo.clone().map(|t| -t),
        lambda0: p.lambda0.clone(),
        lambda1: -p.lambda1.clone(),
        a_on_left: !p.a_on_left,
    }
}

/// Order pieces end to end, starting from an unbounded end.
fn chain(mut rest: Vec<BisectorPiece>) -> (Vec<BisectorPiece>, bool) {
    if rest.is_empty() {
        return (rest, false);
    }
    let start = rest.iter().position(|p| p.t_lo.is_none() || p.t_hi.is_none()).unwrap_or(0);
    let mut first = rest.remove(start);
    if first.t_hi.is_none() && first.t_lo.is_some() {
        first = reversed(&first);
    }
    let mut out = alloc::vec![first];
    while !rest.is_empty() {
        let tail = out.last().unwrap().end();
        let Some(tail) = tail else { break };
        let next = rest.iter().position(|p| p.start().as_ref() == Some(&tail) || p.end().as_ref() == Some(&tail));
        let Some(i) = next else { break };
        let mut piece = rest.remove(i);
        if piece.start().as_ref() != Some(&tail) {
            piece = reversed(&piece);
        }
        out.push(piece);
    }
    let connected = rest.is_empty();
    out.extend(rest);
    (out, connected)
}
