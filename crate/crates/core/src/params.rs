//! Shape parameters: the fatness angle, chain-to-chord ratios, and the
//! resulting stretch bound.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;

use crate::arith::{rat, snap, Scalar};
use crate::error::ParamError;
use crate::point::{orient, Point};
use crate::shape::{BoundaryPoint, ConvexBody, Homothet};

/// Parameters of a body. `origin_star` is exactly representable in `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeParams {
    pub alpha: f64,
    pub kappa0: f64,
    pub kappa: f64,
    pub origin_star: Point,
    pub t_triangulation: f64,
    pub t_general: f64,
    pub tolerance: f64,
}

/// A chord through the origin and its two boundary chains.
#[derive(Debug, Clone, PartialEq)]
pub struct ChordSample {
    pub direction: f64,
    pub x: [f64; 2],
    pub y: [f64; 2],
    pub chord_len: f64,
    pub chain_len_1: f64,
    pub chain_len_2: f64,
}

impl ChordSample {
    pub fn ratio(&self) -> f64 {
        self.chain_len_1.max(self.chain_len_2) / self.chord_len
    }
}

pub const DEFAULT_TOL: f64 = 1e-3;

/// Base angles of the isosceles triangles on chord `xy` whose apex lies on
/// each of the two boundary chains. The first chain runs counter-clockwise
/// from `x` to `y`, the second from `y` to `x`.
pub fn base_angles(body: &ConvexBody, x: &BoundaryPoint, y: &BoundaryPoint) -> Result<(f64, f64), ParamError> {
    if x == y {
        return Err(ParamError::DegenerateChord);
    }
    let unit = Homothet { center: body.origin().exact.clone(), scale: rat(1.0) };
    let px = body.boundary_to_point(&unit, x);
    let py = body.boundary_to_point(&unit, y);
    if px == py {
        return Err(ParamError::DegenerateChord);
    }
    let mid = px.mid(&py);
    let d = py.sub(&px);
    let half2 = d.dot(&d).approx() / 4.0;
    let angle = |from: &BoundaryPoint, to: &BoundaryPoint, a: &Point, b: &Point| -> f64 {
        let apex = chain_apex(body, from, to, a, b, &mid, &d);
        let h2 = apex.sub(&mid).dot(&apex.sub(&mid)).approx();
        libm::atan2(libm::sqrt(h2), libm::sqrt(half2))
    };
    Ok((angle(x, y, &px, &py), angle(y, x, &py, &px)))
}

/// The unique point of the counter-clockwise chain `from -> to` on the
/// perpendicular bisector of the chord.
fn chain_apex(
    body: &ConvexBody,
    from: &BoundaryPoint,
    to: &BoundaryPoint,
    a: &Point,
    b: &Point,
    mid: &Point,
    d: &Point,
) -> Point {
    let m = body.len();
    let vs = body.vertices();
    // Polyline of the chain.
    let mut pts: Vec<Point> = Vec::new();
    pts.push(a.clone());
    let same_edge_forward = from.edge_index == to.edge_index && from.t < to.t;
    if !same_edge_forward {
        let mut k = (from.edge_index + 1) % m;
        loop {
            pts.push(vs[k].exact.clone());
            if k == to.edge_index {
                break;
            }
            k = (k + 1) % m;
        }
    }
    if pts.last() != Some(b) {
        pts.push(b.clone());
    }
    let f = |p: &Point| p.sub(mid).dot(d);
    let mut hits: Vec<Point> = Vec::new();
    for w in pts.windows(2) {
        let (fa, fb) = (f(&w[0]), f(&w[1]));
        let zero = rat(0.0);
        let hit = if fa == zero {
            Some(w[0].clone())
        } else if fb == zero {
            Some(w[1].clone())
        } else if (fa < zero) != (fb < zero) {
            let t = &fa / (&fa - &fb);
            Some(w[0].along(&w[1].sub(&w[0]), &t))
        } else {
            None
        };
        if let Some(h) = hit {
            if !hits.contains(&h) {
                hits.push(h);
            }
        }
    }
    assert_eq!(hits.len(), 1, "a convex chain meets the bisector once");
    hits.pop().unwrap()
}

// ------------------------------------------------------------ float kernels

/// Floating-point view of a body used by the parameter searches.
struct Outline {
    /// Edge functionals relative to the stored origin.
    polar: Vec<[f64; 2]>,
    verts: Vec<[f64; 2]>,
    origin: [f64; 2],
    cumulative: Vec<f64>,
    perimeter: f64,
}

impl Outline {
    fn new(body: &ConvexBody) -> Outline {
        Outline {
            polar: body.polar().iter().map(|a| a.f).collect(),
            verts: body.vertices().iter().map(|v| v.f).collect(),
            origin: body.origin().f,
            cumulative: body.cumulative_lengths().to_vec(),
            perimeter: body.perimeter(),
        }
    }

    fn m(&self) -> usize {
        self.verts.len()
    }

    fn point_at(&self, s: f64) -> [f64; 2] {
        let s = wrap(s, self.perimeter);
        let k = match self.cumulative.binary_search_by(|c| c.partial_cmp(&s).unwrap()) {
            Ok(i) => i.min(self.m() - 1),
            Err(i) => i - 1,
        };
        let a = self.verts[k];
        let b = self.verts[(k + 1) % self.m()];
        let len = self.cumulative[k + 1] - self.cumulative[k];
        let t = ((s - self.cumulative[k]) / len).clamp(0.0, 1.0);
        [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
    }

    /// Parameter range of the line `p + tau u` inside the body, with the
    /// edges hit at each end.
    fn clip(&self, p: [f64; 2], u: [f64; 2]) -> (f64, usize, f64, usize) {
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        let (mut klo, mut khi) = (0, 0);
        let q = [p[0] - self.origin[0], p[1] - self.origin[1]];
        for (k, a) in self.polar.iter().enumerate() {
            let c = a[0] * q[0] + a[1] * q[1];
            let e = a[0] * u[0] + a[1] * u[1];
            if e > 0.0 {
                let t = (1.0 - c) / e;
                if t < hi {
                    hi = t;
                    khi = k;
                }
            } else if e < 0.0 {
                let t = (1.0 - c) / e;
                if t > lo {
                    lo = t;
                    klo = k;
                }
            }
        }
        (lo, klo, hi, khi)
    }

    /// Arc-length position of point `z` known to lie on edge `k`.
    fn position(&self, z: [f64; 2], k: usize) -> f64 {
        let a = self.verts[k];
        self.cumulative[k] + libm::hypot(z[0] - a[0], z[1] - a[1])
    }

    /// `tan` of the larger base angle on the chord between arc positions.
    fn fatness_ratio(&self, s1: f64, s2: f64) -> f64 {
        let x = self.point_at(s1);
        let y = self.point_at(s2);
        let d = [y[0] - x[0], y[1] - x[1]];
        let len = libm::hypot(d[0], d[1]);
        if len < 1e-12 * self.perimeter {
            return f64::INFINITY;
        }
        let mid = [0.5 * (x[0] + y[0]), 0.5 * (x[1] + y[1])];
        let n = [-d[1] / len, d[0] / len];
        let (lo, _, hi, _) = self.clip(mid, n);
        let h = hi.max(-lo).max(0.0);
        2.0 * h / len
    }

    fn chord(&self, p: [f64; 2], theta: f64) -> ChordSample {
        let u = [libm::cos(theta), libm::sin(theta)];
        let (lo, klo, hi, khi) = self.clip(p, u);
        let x = [p[0] + lo * u[0], p[1] + lo * u[1]];
        let y = [p[0] + hi * u[0], p[1] + hi * u[1]];
        let (sx, sy) = (self.position(x, klo), self.position(y, khi));
        let l1 = wrap(sy - sx, self.perimeter);
        ChordSample { direction: theta, x, y, chord_len: hi - lo, chain_len_1: l1, chain_len_2: self.perimeter - l1 }
    }
}

fn golden_min(mut a: f64, mut b: f64, tol: f64, mut f: impl FnMut(f64) -> f64) -> (f64, f64) {
    let g = 0.5 * (libm::sqrt(5.0) - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

fn golden_max(a: f64, b: f64, tol: f64, mut f: impl FnMut(f64) -> f64) -> (f64, f64) {
    let (x, v) = golden_min(a, b, tol, |t| -f(t));
    (x, -v)
}

/// Boundary sample positions: all vertices plus evenly spaced points.
fn sample_positions(o: &Outline, count: usize) -> Vec<f64> {
    let mut s: Vec<f64> = o.cumulative[..o.m()].to_vec();
    let extra = count.saturating_sub(s.len());
    for i in 0..extra {
        s.push(o.perimeter * (i as f64 + 0.5) / extra as f64);
    }
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    s.dedup();
    s
}

/// Fatness angle: the minimum over chords of the larger base angle. Coarse
/// sampling over boundary pairs followed by nested golden-section search.
pub fn alpha_c(body: &ConvexBody, tol: f64) -> f64 {
    alpha_c_with(body, tol, 256)
}

/// [`alpha_c`] with an explicit number of coarse boundary samples.
pub fn alpha_c_with(body: &ConvexBody, tol: f64, samples: usize) -> f64 {
    let o = Outline::new(body);
    let s = sample_positions(&o, samples);
    let n = s.len();
    let mut cand: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            cand.push((o.fatness_ratio(s[i], s[j]), i, j));
        }
    }
    cand.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut best = cand[0].0;
    let span = |i: usize| {
        let prev = if i == 0 { s[n - 1] - o.perimeter } else { s[i - 1] };
        let next = if i + 1 == n { s[0] + o.perimeter } else { s[i + 1] };
        (prev, next)
    };
    let step = o.perimeter * 1e-9 + tol * 1e-3 * o.perimeter;
    for &(_, i, j) in cand.iter().take(12) {
        let (mut a1, mut b1) = span(i);
        let (mut a2, mut b2) = span(j);
        let mut local = f64::INFINITY;
        for _ in 0..6 {
            let (x1, v) = golden_min(a1, b1, step, |u| golden_min(a2, b2, step, |w| o.fatness_ratio(u, w)).1);
            let (x2, _) = golden_min(a2, b2, step, |w| o.fatness_ratio(x1, w));
            let improved = local - v;
            local = local.min(v);
            let (h1, h2) = ((b1 - a1) / 4.0, (b2 - a2) / 4.0);
            (a1, b1, a2, b2) = (x1 - h1, x1 + h1, x2 - h2, x2 + h2);
            if libm::atan(local + improved.max(0.0)) - libm::atan(local) < tol * 1e-2 {
                break;
            }
        }
        best = best.min(local);
    }
    libm::atan(best)
}

fn check_interior(body: &ConvexBody, origin: &Point) -> Result<(), ParamError> {
    let vs = body.vertices();
    let m = vs.len();
    for k in 0..m {
        if orient(&vs[k].exact, &vs[(k + 1) % m].exact, origin).unwrap() != Ordering::Greater {
            return Err(ParamError::OriginNotInterior);
        }
    }
    Ok(())
}

/// Largest chain-to-chord ratio over chords through `origin`.
pub fn kappa_origin(body: &ConvexBody, origin: &Point, tol: f64) -> Result<(f64, ChordSample), ParamError> {
    check_interior(body, origin)?;
    Ok(kappa_origin_f(&Outline::new(body), origin.approx(), tol))
}

fn kappa_origin_f(o: &Outline, p: [f64; 2], tol: f64) -> (f64, ChordSample) {
    let mut dirs: Vec<f64> = o
        .verts
        .iter()
        .map(|v| wrap(libm::atan2(v[1] - p[1], v[0] - p[0]), PI))
        .collect();
    dirs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    dirs.dedup();
    let mut best = o.chord(p, dirs[0]);
    let consider = |c: ChordSample, best: &mut ChordSample| {
        if c.ratio() > best.ratio() {
            *best = c;
        }
    };
    let k = dirs.len();
    for i in 0..k {
        let a = dirs[i];
        let b = if i + 1 == k { dirs[0] + PI } else { dirs[i + 1] };
        consider(o.chord(p, a), &mut best);
        const SUB: usize = 8;
        let h = (b - a) / SUB as f64;
        let mut top = (0, f64::NEG_INFINITY);
        for j in 0..=SUB {
            let r = o.chord(p, a + h * j as f64).ratio();
            if r > top.1 {
                top = (j, r);
            }
        }
        let lo = a + h * (top.0 as f64 - 1.0).max(0.0);
        let hi = a + h * (top.0 as f64 + 1.0).min(SUB as f64);
        let (t, _) = golden_max(lo, hi, tol.max(1e-13), |t| o.chord(p, t).ratio());
        consider(o.chord(p, t), &mut best);
    }
    best.direction = wrap(best.direction, PI);
    (best.ratio(), best)
}

/// Minimum of [`kappa_origin`] over interior origins, with the origin that
/// achieves it (rounded to a multiple of `2^-40`).
pub fn kappa_c(body: &ConvexBody, tol: f64) -> (f64, Point) {
    let o = Outline::new(body);
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for v in &o.verts {
        x0 = x0.min(v[0]);
        y0 = y0.min(v[1]);
        x1 = x1.max(v[0]);
        y1 = y1.max(v[1]);
    }
    let diam = libm::hypot(x1 - x0, y1 - y0);
    let margin = 0.02;
    let inside = |p: [f64; 2]| {
        let q = [p[0] - o.origin[0], p[1] - o.origin[1]];
        o.polar.iter().all(|a| a[0] * q[0] + a[1] * q[1] <= 1.0 - margin)
    };
    let coarse = 1e-7;
    let eval = |p: [f64; 2]| kappa_origin_f(&o, p, coarse).0;
    let mut seeds: Vec<[f64; 2]> = Vec::new();
    let m = o.m() as f64;
    seeds.push([o.verts.iter().map(|v| v[0]).sum::<f64>() / m, o.verts.iter().map(|v| v[1]).sum::<f64>() / m]);
    seeds.push(area_centroid(&o.verts));
    seeds.push(o.origin);
    const G: usize = 33;
    for i in 0..G {
        for j in 0..G {
            let p = [x0 + (x1 - x0) * (i as f64 + 0.5) / G as f64, y0 + (y1 - y0) * (j as f64 + 0.5) / G as f64];
            seeds.push(p);
        }
    }
    let mut scored: Vec<(f64, [f64; 2])> = seeds.into_iter().filter(|p| inside(*p)).map(|p| (eval(p), p)).collect();
    scored.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut best = scored[0];
    let step0 = ((x1 - x0).max(y1 - y0)) / G as f64;
    for &(v, p) in scored.iter().take(3) {
        let (mut cur, mut val, mut step) = (p, v, step0);
        while step > tol * 1e-3 * diam {
            let mut moved = false;
            for d in [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]] {
                let q = [cur[0] + step * d[0], cur[1] + step * d[1]];
                if !inside(q) {
                    continue;
                }
                let w = eval(q);
                if w < val {
                    cur = q;
                    val = w;
                    moved = true;
                    break;
                }
            }
            if !moved {
                step *= 0.5;
            }
        }
        if val < best.0 {
            best = (val, cur);
        }
    }
    let star = [snap(best.1[0], 40), snap(best.1[1], 40)];
    let value = kappa_origin_f(&o, star, 1e-13).0;
    (value, Point::from_f64(star[0], star[1]))
}

fn area_centroid(vs: &[[f64; 2]]) -> [f64; 2] {
    let (mut a, mut cx, mut cy) = (0.0, 0.0, 0.0);
    for i in 0..vs.len() {
        let p = vs[i];
        let q = vs[(i + 1) % vs.len()];
        let c = p[0] * q[1] - q[0] * p[1];
        a += c;
        cx += (p[0] + q[0]) * c;
        cy += (p[1] + q[1]) * c;
    }
    [cx / (3.0 * a), cy / (3.0 * a)]
}

/// `2 kappa max(3 / sin(alpha / 2), kappa)`, times `kappa` again when the
/// graph is not a triangulation.
pub fn stretch_bound(alpha: f64, kappa: f64, is_triangulation: bool) -> Result<f64, ParamError> {
    if !(alpha > 0.0 && alpha < PI / 2.0) {
        return Err(ParamError::ParamOutOfRange(String::from("alpha must lie in (0, pi/2)")));
    }
    if !(kappa >= 1.0) || !kappa.is_finite() {
        return Err(ParamError::ParamOutOfRange(String::from("kappa must be at least 1")));
    }
    let t = 2.0 * kappa * (3.0 / libm::sin(alpha / 2.0)).max(kappa);
    Ok(if is_triangulation { t } else { kappa * t })
}

/// All parameters of a body.
pub fn compute_params(body: &ConvexBody, tol: f64) -> ShapeParams {
    let alpha = alpha_c(body, tol);
    let kappa0 = kappa_origin_f(&Outline::new(body), body.origin().f, 1e-13).0;
    let (mut kappa, mut origin_star) = kappa_c(body, tol);
    if kappa0 <= kappa {
        kappa = kappa0;
        origin_star = body.origin().exact.clone();
    }
    let t_triangulation = stretch_bound(alpha, kappa, true).expect("parameters in range");
    ShapeParams {
        alpha,
        kappa0,
        kappa,
        origin_star,
        t_triangulation,
        t_general: kappa * t_triangulation,
        tolerance: tol,
    }
}

/// Exact boundary point at a vertex of the unit body.
pub fn vertex_point(k: usize) -> BoundaryPoint {
    BoundaryPoint { edge_index: k, t: rat(0.0) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_frac;
    use crate::shape::{equilateral_triangle, regular, square};

    /// Independent dense oracle for the fatness angle: apexes by bisection
    /// along each chain of a `k`-point discretisation.
    fn brute_alpha(body: &ConvexBody, k: usize) -> f64 {
        let o = Outline::new(body);
        let mut best = f64::INFINITY;
        for i in 0..k {
            for j in i + 1..k {
                let s1 = o.perimeter * i as f64 / k as f64;
                let s2 = o.perimeter * j as f64 / k as f64;
                let x = o.point_at(s1);
                let y = o.point_at(s2);
                let mid = [(x[0] + y[0]) / 2.0, (x[1] + y[1]) / 2.0];
                let d = [y[0] - x[0], y[1] - x[1]];
                let f = |s: f64| {
                    let z = o.point_at(s);
                    (z[0] - mid[0]) * d[0] + (z[1] - mid[1]) * d[1]
                };
                let mut worst: f64 = 0.0;
                for (mut a, mut b, sgn) in [(s1, s2, 1.0), (s2, s1 + o.perimeter, -1.0)] {
                    for _ in 0..60 {
                        let c = 0.5 * (a + b);
                        if sgn * f(c) < 0.0 {
                            a = c;
                        } else {
                            b = c;
                        }
                    }
                    let z = o.point_at(0.5 * (a + b));
                    let h = libm::hypot(z[0] - mid[0], z[1] - mid[1]);
                    worst = worst.max(libm::atan(2.0 * h / libm::hypot(d[0], d[1])));
                }
                best = best.min(worst);
            }
        }
        best
    }

    #[test]
    fn square_edge_chord_base_angles() {
        let sq = square();
        // Vertex 0 is (-1,-1) and vertex 1 is (1,-1) after normalisation.
        assert_eq!(sq.vertices()[0].exact, Point::from_f64(-1.0, -1.0));
        let (near, far) = base_angles(&sq, &vertex_point(0), &vertex_point(1)).unwrap();
        assert_eq!(near, 0.0);
        // The apex on the far chain is (0, 1), twice the half chord away.
        assert!((far - libm::atan(2.0)).abs() < 1e-15);
        assert_eq!(base_angles(&sq, &vertex_point(2), &vertex_point(2)), Err(ParamError::DegenerateChord));
    }

    #[test]
    fn antipodal_chord_of_64_gon() {
        let c = regular(64).unwrap();
        let (a, b) = base_angles(&c, &vertex_point(0), &vertex_point(32)).unwrap();
        assert!((a - PI / 4.0).abs() < 1e-2 && (b - PI / 4.0).abs() < 1e-2);
        let (a, b) = base_angles(&c, &vertex_point(5), &BoundaryPoint { edge_index: 40, t: rat_frac(1, 3) }).unwrap();
        assert!(a > 0.0 && b > 0.0);
    }

    #[test]
    fn alpha_of_presets() {
        let c = regular(64).unwrap();
        assert!((alpha_c(&c, DEFAULT_TOL) - PI / 4.0).abs() < 0.02);
        let sq = alpha_c(&square(), DEFAULT_TOL);
        assert!(sq > 0.0 && sq < PI / 2.0);
        let tri = equilateral_triangle();
        let a = alpha_c(&tri, DEFAULT_TOL);
        let b = brute_alpha(&tri, 1024);
        assert!(a <= b + 2.0 * DEFAULT_TOL && b <= a + 2.0 * DEFAULT_TOL, "{a} {b}");
        // The altitude chord realises pi/6.
        assert!((a - PI / 6.0).abs() < 2.0 * DEFAULT_TOL);
        let b = brute_alpha(&square(), 1024);
        assert!((sq - b).abs() <= 2.0 * DEFAULT_TOL, "{sq} {b}");
    }

    #[test]
    fn kappa_of_square_center_is_two() {
        let (k, chord) = kappa_origin(&square(), &Point::from_f64(0.0, 0.0), 1e-12).unwrap();
        assert!((k - 2.0).abs() < 1e-12, "{k}");
        assert!((chord.chain_len_1 - chord.chain_len_2).abs() < 1e-12);
        assert!(matches!(
            kappa_origin(&square(), &Point::from_f64(1.0, 0.0), 1e-9),
            Err(ParamError::OriginNotInterior)
        ));
    }

    #[test]
    fn centrally_symmetric_chains_are_equal() {
        let c = regular(16).unwrap();
        let o = Outline::new(&c);
        for i in 0..50 {
            let ch = o.chord([0.0, 0.0], PI * i as f64 / 50.0);
            assert!((ch.chain_len_1 - ch.chain_len_2).abs() < 1e-12);
        }
    }

    #[test]
    fn kappa_of_64_gon() {
        let c = regular(64).unwrap();
        let (k0, _) = kappa_origin(&c, &Point::from_f64(0.0, 0.0), 1e-12).unwrap();
        assert!((k0 - PI / 2.0).abs() < 0.02);
        let (k, star) = kappa_c(&c, DEFAULT_TOL);
        assert!((k - PI / 2.0).abs() < 0.02 && k <= k0 + 1e-12);
        let [sx, sy] = star.approx();
        assert!(sx.abs() < 0.05 && sy.abs() < 0.05);
    }

    #[test]
    fn kappa_square_not_beaten() {
        let (k, _) = kappa_c(&square(), DEFAULT_TOL);
        assert!(k <= 2.0 + 1e-12 && k > 2.0 - DEFAULT_TOL, "{k}");
    }

    #[test]
    fn stretch_bound_values() {
        let t = stretch_bound(PI / 4.0, PI / 2.0, true).unwrap();
        assert!((t - 3.0 * PI / libm::sin(PI / 8.0)).abs() < 1e-12);
        assert!((t - 24.63).abs() < 0.01);
        assert!((stretch_bound(PI / 3.0, 1.0, true).unwrap() - 12.0).abs() < 1e-12);
        let g = stretch_bound(PI / 4.0, PI / 2.0, false).unwrap();
        assert_eq!(g, PI / 2.0 * t);
        assert!((g - 38.69).abs() < 0.01);
        assert!(stretch_bound(0.0, 2.0, true).is_err());
        assert!(stretch_bound(1.0, 0.5, true).is_err());
    }

    #[test]
    fn regular_polygons_approach_disk_values() {
        let mut prev: Option<(f64, f64)> = None;
        for k in [16, 32, 64] {
            let c = regular(k).unwrap();
            let a = alpha_c(&c, DEFAULT_TOL);
            let (kap, _) = kappa_c(&c, DEFAULT_TOL);
            let err = ((a - PI / 4.0).abs(), (kap - PI / 2.0).abs());
            if let Some(p) = prev {
                assert!(err.0 <= p.0 + DEFAULT_TOL && err.1 <= p.1 + DEFAULT_TOL, "{k}: {err:?} vs {p:?}");
            }
            prev = Some(err);
        }
    }

    #[test]
    fn params_invariants() {
        for c in [square(), equilateral_triangle(), regular(5).unwrap()] {
            let p = compute_params(&c, DEFAULT_TOL);
            assert!(p.alpha > 0.0 && p.alpha < PI / 2.0);
            assert!(p.kappa >= 1.0 && p.kappa <= p.kappa0);
            assert_eq!(p.t_general, p.kappa * p.t_triangulation);
        }
    }
}

/// `v` reduced into `[0, m)`.
fn wrap(v: f64, m: f64) -> f64 {
    let r = libm::fmod(v, m);
    if r < 0.0 {
        r + m
    } else {
        r
    }
}
