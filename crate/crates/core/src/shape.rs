//! Convex polygonal bodies, their distance functions, and homothets.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{filtered, rat, snap, Cert, Interval, Rational, Scalar};
use crate::error::ShapeError;
use crate::point::{angle_cmp, orient, Lift, Point, Pt, XPoint};

/// A convex polygon with a distinguished interior point.
///
/// Vertices are stored counter-clockwise without repeated or collinear
/// vertices. The distance from `x` to `y` is the smallest `l >= 0` such that
/// `y` lies in `x + l (C - o)`.
#[derive(Debug, Clone)]
pub struct ConvexBody {
    vertices: Vec<XPoint>,
    origin: XPoint,
    /// `v_k - o`.
    rays: Vec<XPoint>,
    /// Edge `k` (from `v_k` to `v_k+1`) satisfies `polar_k . (z - o) = 1`.
    polar: Vec<XPoint>,
    edge_len: Vec<f64>,
    cumulative: Vec<f64>,
    perimeter: f64,
}

/// A translated and scaled copy `center + scale (C - o)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Homothet {
    pub center: Point,
    pub scale: Rational,
}

/// A point on the boundary of a homothet, as an edge index and a parameter
/// `t` in `[0, 1)` along that edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryPoint {
    pub edge_index: usize,
    pub t: Rational,
}

/// Position of a point relative to a homothet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    Interior,
    Boundary,
    Exterior,
}

/// One sector of the cone decomposition around a site `p`.
///
/// For `x` in the closed sector from `p` spanned counter-clockwise by
/// `ray_from` and `ray_to`, `d(x, p) = a x_1 + b x_2 + c`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeForm {
    pub edge_index: usize,
    pub apex: Point,
    pub ray_from: Point,
    pub ray_to: Point,
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

/// Validate and normalise a polygon given by its vertices and origin.
pub fn validate_body(vertices: &[Point], origin: &Point) -> Result<ConvexBody, ShapeError> {
    let mut vs: Vec<Point> = Vec::with_capacity(vertices.len());
    for v in vertices {
        if vs.last() != Some(v) {
            vs.push(v.clone());
        }
    }
    while vs.len() > 1 && vs.first() == vs.last() {
        vs.pop();
    }
    if vs.len() < 3 {
        return Err(ShapeError::TooFewVertices);
    }
    let area2 = signed_area2(&vs);
    match area2.sign().unwrap() {
        Ordering::Equal => return Err(ShapeError::TooFewVertices),
        Ordering::Less => vs.reverse(),
        Ordering::Greater => {}
    }
    // Drop collinear vertices that lie between their neighbours.
    loop {
        let m = vs.len();
        if m < 3 {
            return Err(ShapeError::TooFewVertices);
        }
        let mut removed = false;
        for i in 0..m {
            let (a, b, c) = (&vs[(i + m - 1) % m], &vs[i], &vs[(i + 1) % m]);
            if orient(a, b, c).unwrap() == Ordering::Equal {
                let between = b.sub(a).dot(&c.sub(b)) > rat(0.0);
                if !between {
                    return Err(ShapeError::NonConvex);
                }
                vs.remove(i);
                removed = true;
                break;
            }
        }
        if !removed {
            break;
        }
    }
    let m = vs.len();
    for i in 0..m {
        let (a, b, c) = (&vs[(i + m - 1) % m], &vs[i], &vs[(i + 1) % m]);
        if orient(a, b, c).unwrap() != Ordering::Greater {
            return Err(ShapeError::NonConvex);
        }
    }
    // Left turns everywhere still allow a polygon that winds twice.
    let mut descents = 0;
    for i in 0..m {
        let e0 = vs[(i + 1) % m].sub(&vs[i]);
        let e1 = vs[(i + 2) % m].sub(&vs[(i + 1) % m]);
        if angle_cmp(&e1, &e0).unwrap() == Ordering::Less {
            descents += 1;
        }
    }
    if descents != 1 {
        return Err(ShapeError::NonConvex);
    }
    for i in 0..m {
        if orient(&vs[i], &vs[(i + 1) % m], origin).unwrap() != Ordering::Greater {
            return Err(ShapeError::OriginNotInterior);
        }
    }
    Ok(ConvexBody::build(vs, origin.clone()))
}

fn signed_area2(vs: &[Point]) -> Rational {
    let m = vs.len();
    let mut s = rat(0.0);
    for i in 0..m {
        s = s + vs[i].cross(&vs[(i + 1) % m]);
    }
    s
}

impl ConvexBody {
    fn build(vs: Vec<Point>, origin: Point) -> ConvexBody {
        let m = vs.len();
        let mut rays = Vec::with_capacity(m);
        let mut polar = Vec::with_capacity(m);
        let mut edge_len = Vec::with_capacity(m);
        for k in 0..m {
            let a = &vs[k];
            let b = &vs[(k + 1) % m];
            let d = b.sub(a);
            let n = Pt::new(d.y.clone(), -d.x.clone());
            let h = n.dot(&a.sub(&origin));
            polar.push(XPoint::new(Pt::new(&n.x / &h, &n.y / &h)));
            rays.push(XPoint::new(a.sub(&origin)));
            let [dx, dy] = d.approx();
            edge_len.push(libm::hypot(dx, dy));
        }
        let mut cumulative = Vec::with_capacity(m + 1);
        let mut acc = 0.0;
        cumulative.push(0.0);
        for l in &edge_len {
            acc += l;
            cumulative.push(acc);
        }
        ConvexBody {
            vertices: vs.into_iter().map(XPoint::new).collect(),
            origin: XPoint::new(origin),
            rays,
            polar,
            edge_len,
            cumulative,
            perimeter: acc,
        }
    }

    /// Same polygon with a different origin.
    pub fn with_origin(&self, origin: &Point) -> Result<ConvexBody, ShapeError> {
        let vs: Vec<Point> = self.vertices.iter().map(|v| v.exact.clone()).collect();
        validate_body(&vs, origin)
    }

    /// Polygon from floating-point coordinates, converted exactly.
    pub fn from_f64(vertices: &[[f64; 2]], origin: [f64; 2]) -> Result<ConvexBody, ShapeError> {
        let vs: Vec<Point> = vertices.iter().map(|v| Point::from_f64(v[0], v[1])).collect();
        validate_body(&vs, &Point::from_f64(origin[0], origin[1]))
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[XPoint] {
        &self.vertices
    }

    pub fn origin(&self) -> &XPoint {
        &self.origin
    }

    /// Vertex offsets `v_k - o`.
    pub fn rays(&self) -> &[XPoint] {
        &self.rays
    }

    /// Edge functionals: the distance is `max_k polar_k . (y - x)`.
    pub fn polar(&self) -> &[XPoint] {
        &self.polar
    }

    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    pub fn edge_lengths(&self) -> &[f64] {
        &self.edge_len
    }

    /// Arc-length position of each vertex, starting at vertex 0; the last
    /// entry is the perimeter.
    pub fn cumulative_lengths(&self) -> &[f64] {
        &self.cumulative
    }

    /// Gauge of the vector `z`, generic over the scalar.
    pub fn gauge<S: Lift>(&self, z: &Pt<S>) -> S {
        let mut best = S::lift(&self.polar[0]).dot(z);
        for a in &self.polar[1..] {
            best = best.max_of(&S::lift(a).dot(z));
        }
        best
    }

    pub fn gauge_f64(&self, z: [f64; 2]) -> f64 {
        self.polar.iter().map(|a| a.f[0] * z[0] + a.f[1] * z[1]).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Exact convex distance `d(x, y)`.
    pub fn distance(&self, x: &Point, y: &Point) -> Rational {
        let z = y.sub(x);
        let zi = Pt::new(Interval::enclose(&z.x), Interval::enclose(&z.y));
        let dots: Vec<Interval> = self.polar.iter().map(|a| a.fast.dot(&zi)).collect();
        let floor = dots.iter().map(Interval::lo).fold(f64::NEG_INFINITY, f64::max);
        let mut best: Option<Rational> = None;
        for (a, d) in self.polar.iter().zip(&dots) {
            if d.hi() < floor {
                continue;
            }
            let v = a.exact.dot(&z);
            best = Some(match best {
                Some(b) if b >= v => b,
                _ => v,
            });
        }
        best.expect("the body has edges")
    }

    pub fn distance_f64(&self, x: [f64; 2], y: [f64; 2]) -> f64 {
        self.gauge_f64([y[0] - x[0], y[1] - x[1]])
    }

    /// Cone decomposition around `p`: one affine form per edge of the body.
    pub fn cone_decomposition(&self, p: &Point) -> Vec<ConeForm> {
        let m = self.len();
        (0..m)
            .map(|k| {
                let a = &self.polar[k].exact;
                ConeForm {
                    edge_index: k,
                    apex: p.clone(),
                    ray_from: self.rays[k].exact.neg(),
                    ray_to: self.rays[(k + 1) % m].exact.neg(),
                    a: -a.x.clone(),
                    b: -a.y.clone(),
                    c: a.dot(p),
                }
            })
            .collect()
    }

    /// Vertices of a homothet, counter-clockwise.
    pub fn homothet_vertices(&self, h: &Homothet) -> Vec<Point> {
        self.rays.iter().map(|w| h.center.add(&w.exact.scale(&h.scale))).collect()
    }

    pub fn homothet_vertices_f64(&self, center: [f64; 2], scale: f64) -> Vec<[f64; 2]> {
        self.rays.iter().map(|w| [center[0] + scale * w.f[0], center[1] + scale * w.f[1]]).collect()
    }

    /// Axis-aligned bounds of `C - o`, widened slightly.
    pub fn ray_bounds(&self) -> [f64; 4] {
        let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
        for w in &self.rays {
            b[0] = b[0].min(w.fast.x.lo());
            b[1] = b[1].min(w.fast.y.lo());
            b[2] = b[2].max(w.fast.x.hi());
            b[3] = b[3].max(w.fast.y.hi());
        }
        b
    }

    pub fn classify(&self, h: &Homothet, p: &Point) -> Placement {
        classify_in(self, &XPoint::new(h.center.clone()), &h.scale, &XPoint::new(p.clone()))
    }

    /// Locate `p` on the boundary of `h`.
    pub fn boundary_point(&self, h: &Homothet, p: &Point) -> Result<BoundaryPoint, ShapeError> {
        if self.classify(h, p) != Placement::Boundary {
            return Err(ShapeError::PointNotOnBoundary);
        }
        let fast = self.homothet_vertices_fast(h);
        let pf = Pt::<Interval>::convert(p);
        let m = fast.len();
        for k in 0..m {
            if matches!(orient(&fast[k], &fast[(k + 1) % m], &pf), Ok(o) if o != Ordering::Equal) {
                continue;
            }
            let a = h.center.add(&self.rays[k].exact.scale(&h.scale));
            let b = h.center.add(&self.rays[(k + 1) % m].exact.scale(&h.scale));
            if orient(&a, &b, p).unwrap() == Ordering::Equal {
                let d = b.sub(&a);
                let t = p.sub(&a).dot(&d) / d.dot(&d);
                if t >= rat(0.0) && t < rat(1.0) {
                    return Ok(BoundaryPoint { edge_index: k, t });
                }
            }
        }
        Err(ShapeError::PointNotOnBoundary)
    }

    fn homothet_vertices_fast(&self, h: &Homothet) -> Vec<Pt<Interval>> {
        let c = Pt::<Interval>::convert(&h.center);
        let s = Interval::enclose(&h.scale);
        self.rays.iter().map(|w| c.add(&w.fast.scale(&s))).collect()
    }

    pub fn boundary_to_point(&self, h: &Homothet, bp: &BoundaryPoint) -> Point {
        let m = self.len();
        let a = h.center.add(&self.rays[bp.edge_index % m].exact.scale(&h.scale));
        let b = h.center.add(&self.rays[(bp.edge_index + 1) % m].exact.scale(&h.scale));
        a.along(&b.sub(&a), &bp.t)
    }

    /// Arc-length position along the unit body.
    fn position(&self, bp: &BoundaryPoint) -> f64 {
        self.cumulative[bp.edge_index] + bp.t.approx() * self.edge_len[bp.edge_index]
    }

    /// Length of the boundary walk from `from` to `to`, counter-clockwise or
    /// clockwise. Equal endpoints give the whole perimeter.
    pub fn arc_length(&self, h: &Homothet, from: &Point, to: &Point, ccw: bool) -> Result<f64, ShapeError> {
        let a = self.boundary_point(h, from)?;
        let b = self.boundary_point(h, to)?;
        Ok(self.walk(h, &a, &b, ccw))
    }

    fn walk(&self, h: &Homothet, a: &BoundaryPoint, b: &BoundaryPoint, ccw: bool) -> f64 {
        let scale = h.scale.approx();
        if a == b {
            return self.perimeter * scale;
        }
        let (sa, sb) = (self.position(a), self.position(b));
        let mut d = if ccw { sb - sa } else { sa - sb };
        if d <= 0.0 {
            d += self.perimeter;
        }
        d * scale
    }

    /// Length of the arc of `h` between boundary points `x` and `y` that
    /// stays on or above the oriented line through `axis_point` with
    /// direction `axis_dir`. The center of `h` must lie on that line.
    pub fn upper_arc(
        &self,
        h: &Homothet,
        x: &Point,
        y: &Point,
        axis_point: &Point,
        axis_dir: &Point,
    ) -> Result<f64, ShapeError> {
        let ahead = axis_point.add(axis_dir);
        if orient(axis_point, &ahead, &h.center).unwrap() != Ordering::Equal {
            return Err(ShapeError::PreconditionViolated(String::from("homothet center is not on the axis")));
        }
        for p in [x, y] {
            if orient(axis_point, &ahead, p).unwrap() == Ordering::Less {
                return Err(ShapeError::PreconditionViolated(String::from("endpoint below the axis")));
            }
        }
        let a = self.boundary_point(h, x)?;
        let b = self.boundary_point(h, y)?;
        if a == b {
            return Ok(0.0);
        }
        let fast = self.homothet_vertices_fast(h);
        let m = fast.len();
        let (af, bf) = (Pt::<Interval>::convert(axis_point), Pt::<Interval>::convert(&ahead));
        let below: Vec<bool> = (0..m)
            .map(|k| {
                filtered(
                    || orient(&af, &bf, &fast[k]),
                    || orient(axis_point, &ahead, &h.center.add(&self.rays[k].exact.scale(&h.scale))),
                ) == Ordering::Less
            })
            .collect();
        let above = |from: &BoundaryPoint, to: &BoundaryPoint| -> bool {
            // Vertices strictly inside the counter-clockwise walk from -> to.
            let mut k = (from.edge_index + 1) % m;
            let same_edge_forward = from.edge_index == to.edge_index && from.t < to.t;
            if same_edge_forward {
                return true;
            }
            loop {
                if below[k] {
                    return false;
                }
                if k == to.edge_index {
                    return true;
                }
                k = (k + 1) % m;
            }
        };
        let ccw_ok = above(&a, &b);
        let cw_ok = above(&b, &a);
        match (ccw_ok, cw_ok) {
            (true, false) => Ok(self.walk(h, &a, &b, true)),
            (false, true) => Ok(self.walk(h, &a, &b, false)),
            _ => Err(ShapeError::PreconditionViolated(format!(
                "no unique upper arc (ccw {ccw_ok}, cw {cw_ok})"
            ))),
        }
    }
}

/// Classification of `p` against `center + scale (C - o)`, filtered.
pub fn classify_in(body: &ConvexBody, center: &XPoint, scale: &Rational, p: &XPoint) -> Placement {
    fn run<S: Lift>(body: &ConvexBody, c: &XPoint, s: &S, p: &XPoint) -> Cert<Placement> {
        let d = body.gauge::<S>(&S::lift(p).sub(&S::lift(c)));
        Ok(match d.cmp_to(s)? {
            Ordering::Less => Placement::Interior,
            Ordering::Equal => Placement::Boundary,
            Ordering::Greater => Placement::Exterior,
        })
    }
    filtered(
        || run::<Interval>(body, center, &Interval::enclose(scale), p),
        || {
            Ok(match body.distance(&center.exact, &p.exact).cmp(scale) {
                Ordering::Less => Placement::Interior,
                Ordering::Equal => Placement::Boundary,
                Ordering::Greater => Placement::Exterior,
            })
        },
    )
}

// ------------------------------------------------------------------ presets

const SNAP_BITS: i32 = 40;

pub fn square() -> ConvexBody {
    ConvexBody::from_f64(&[[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]], [0.0, 0.0]).unwrap()
}

/// Equilateral triangle with circumradius 1 and the centroid as origin,
/// vertex coordinates rounded to floats.
pub fn equilateral_triangle() -> ConvexBody {
    let s = snap(libm::sqrt(3.0) / 2.0, SNAP_BITS);
    ConvexBody::from_f64(&[[0.0, 1.0], [-s, -0.5], [s, -0.5]], [0.0, 0.0]).unwrap()
}

/// Regular `k`-gon inscribed in the unit circle with a vertex at `(1, 0)`.
pub fn regular(k: usize) -> Result<ConvexBody, ShapeError> {
    if k < 3 {
        return Err(ShapeError::TooFewVertices);
    }
    let vs: Vec<[f64; 2]> = (0..k)
        .map(|j| {
            let th = 2.0 * core::f64::consts::PI * j as f64 / k as f64;
            [snap(libm::cos(th), SNAP_BITS), snap(libm::sin(th), SNAP_BITS)]
        })
        .collect();
    ConvexBody::from_f64(&vs, [0.0, 0.0])
}

/// Random convex `n`-gon: points on a randomly rotated ellipse, with the
/// vertex centroid as origin. Deterministic in `seed`.
pub fn random_convex(n: usize, seed: u64) -> Result<ConvexBody, ShapeError> {
    if n < 3 {
        return Err(ShapeError::TooFewVertices);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau = 2.0 * core::f64::consts::PI;
    loop {
        let min_gap = tau / (4.0 * n as f64);
        let mut th: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * tau).collect();
        th.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let gaps_ok = (0..n).all(|i| {
            let next = if i + 1 == n { th[0] + tau } else { th[i + 1] };
            next - th[i] >= min_gap
        });
        if !gaps_ok {
            continue;
        }
        let ratio = 0.5 + 0.5 * rng.random::<f64>();
        let rot = rng.random::<f64>() * tau;
        let (sr, cr) = (libm::sin(rot), libm::cos(rot));
        let vs: Vec<[f64; 2]> = th
            .iter()
            .map(|&t| {
                let (x, y) = (libm::cos(t), ratio * libm::sin(t));
                [snap(cr * x - sr * y, 32), snap(sr * x + cr * y, 32)]
            })
            .collect();
        let cx = snap(vs.iter().map(|v| v[0]).sum::<f64>() / n as f64, 32);
        let cy = snap(vs.iter().map(|v| v[1]).sum::<f64>() / n as f64, 32);
        match ConvexBody::from_f64(&vs, [cx, cy]) {
            Ok(b) if b.len() == n => return Ok(b),
            _ => continue,
        }
    }
}

/// Preset by name: `square`, `triangle` (or `equilateral-triangle`),
/// `regular` / `regular-K`, `random-convex` / `random-convex-N` /
/// `random-convex-N-SEED`.
pub fn preset(name: &str) -> Result<ConvexBody, ShapeError> {
    let bad = || ShapeError::UnknownPreset(String::from(name));
    match name {
        "square" => return Ok(square()),
        "triangle" | "equilateral-triangle" => return Ok(equilateral_triangle()),
        "regular" => return regular(64),
        "random-convex" => return random_convex(7, 0),
        _ => {}
    }
    if let Some(k) = name.strip_prefix("regular-") {
        return regular(k.parse().map_err(|_| bad())?);
    }
    if let Some(rest) = name.strip_prefix("random-convex-") {
        let mut it = rest.splitn(2, '-');
        let n: usize = it.next().unwrap_or("").parse().map_err(|_| bad())?;
        let seed: u64 = match it.next() {
            Some(s) => s.parse().map_err(|_| bad())?,
            None => 0,
        };
        return random_convex(n, seed);
    }
    Err(bad())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_frac;

    fn p(x: f64, y: f64) -> Point {
        Point::from_f64(x, y)
    }

    fn tri() -> ConvexBody {
        ConvexBody::from_f64(&[[2.0, 0.0], [-1.0, 1.0], [-1.0, -1.0]], [0.0, 0.0]).unwrap()
    }

    #[test]
    fn triangle_distances_are_asymmetric() {
        let c = tri();
        assert_eq!(c.distance(&p(0.0, 0.0), &p(1.0, 0.0)), rat_frac(1, 2));
        assert_eq!(c.distance(&p(1.0, 0.0), &p(0.0, 0.0)), rat(1.0));
    }

    #[test]
    fn validation_errors() {
        let sq = [[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]];
        assert!(matches!(ConvexBody::from_f64(&sq, [1.0, 0.0]), Err(ShapeError::OriginNotInterior)));
        assert!(matches!(ConvexBody::from_f64(&sq, [3.0, 0.0]), Err(ShapeError::OriginNotInterior)));
        assert!(matches!(
            ConvexBody::from_f64(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]], [0.0, 0.0]),
            Err(ShapeError::TooFewVertices)
        ));
        assert!(matches!(
            ConvexBody::from_f64(&[[0.0, 0.0], [2.0, 0.0], [1.0, 0.5], [2.0, 2.0], [0.0, 2.0]], [0.5, 1.0]),
            Err(ShapeError::NonConvex)
        ));
        // A pentagram has only left turns but winds twice.
        let star: Vec<[f64; 2]> = (0..5)
            .map(|j| {
                let t = 4.0 * core::f64::consts::PI * j as f64 / 5.0;
                [libm::cos(t), libm::sin(t)]
            })
            .collect();
        assert!(matches!(ConvexBody::from_f64(&star, [0.0, 0.0]), Err(ShapeError::NonConvex)));
    }

    #[test]
    fn normalisation_merges_and_orients() {
        let b = ConvexBody::from_f64(
            &[[-1.0, 1.0], [1.0, 1.0], [1.0, 0.0], [1.0, -1.0], [0.0, -1.0], [-1.0, -1.0], [-1.0, -1.0]],
            [0.0, 0.0],
        )
        .unwrap();
        assert_eq!(b.len(), 4);
        let vs: Vec<Point> = b.vertices().iter().map(|v| v.exact.clone()).collect();
        assert!(signed_area2(&vs) > rat(0.0));
    }

    #[test]
    fn square_cone_forms() {
        let c = square();
        let forms = c.cone_decomposition(&p(0.0, 0.0));
        // The sector pointing along +x carries d(x, 0) = x_1.
        let f = forms.iter().find(|f| f.a == rat(1.0)).unwrap();
        assert_eq!((f.b.clone(), f.c.clone()), (rat(0.0), rat(0.0)));
        let mid = f.ray_from.add(&f.ray_to);
        assert!(mid.x > rat(0.0) && mid.y == rat(0.0));
    }

    #[test]
    fn cone_forms_agree_with_distance_and_are_continuous() {
        let c = tri();
        let site = p(0.5, -0.25);
        let forms = c.cone_decomposition(&site);
        let m = forms.len();
        for (k, f) in forms.iter().enumerate() {
            for (s, t) in [(1.0, 0.0), (0.0, 1.0), (0.5, 0.5), (3.0, 1.0)] {
                let x = site.add(&f.ray_from.scale(&rat(s))).add(&f.ray_to.scale(&rat(t)));
                let lin = &f.a * &x.x + &f.b * &x.y + &f.c;
                assert_eq!(lin, c.distance(&x, &site));
            }
            // Shared ray with the next sector.
            let g = &forms[(k + 1) % m];
            assert_eq!(f.ray_to, g.ray_from);
            let x = site.add(&f.ray_to.scale(&rat(2.0)));
            assert_eq!(&f.a * &x.x + &f.b * &x.y + &f.c, &g.a * &x.x + &g.b * &x.y + &g.c);
        }
    }

    #[test]
    fn classification() {
        let c = square();
        let h = Homothet { center: p(0.0, 0.0), scale: rat(2.0) };
        assert_eq!(c.classify(&h, &p(2.0, 1.0)), Placement::Boundary);
        assert_eq!(c.classify(&h, &p(1.0, 1.0)), Placement::Interior);
        assert_eq!(c.classify(&h, &p(2.0, 2.5)), Placement::Exterior);
    }

    #[test]
    fn square_arcs() {
        let c = square();
        let h = Homothet { center: p(0.0, 0.0), scale: rat(1.0) };
        let l = c.arc_length(&h, &p(1.0, 1.0), &p(-1.0, -1.0), true).unwrap();
        assert_eq!(l, 4.0);
        assert_eq!(c.arc_length(&h, &p(1.0, 0.0), &p(1.0, 0.0), true).unwrap(), 8.0);
        assert!(matches!(c.arc_length(&h, &p(0.5, 0.0), &p(1.0, 0.0), true), Err(ShapeError::PointNotOnBoundary)));
        let up = c.upper_arc(&h, &p(-1.0, 0.0), &p(1.0, 0.0), &p(0.0, 0.0), &p(1.0, 0.0)).unwrap();
        assert_eq!(up, 4.0);
        let up = c.upper_arc(&h, &p(1.0, 0.0), &p(-1.0, 0.0), &p(0.0, 0.0), &p(1.0, 0.0)).unwrap();
        assert_eq!(up, 4.0);
        assert_eq!(c.upper_arc(&h, &p(0.0, 1.0), &p(0.0, 1.0), &p(0.0, 0.0), &p(1.0, 0.0)).unwrap(), 0.0);
        assert!(matches!(
            c.upper_arc(&h, &p(1.0, 0.0), &p(0.0, -1.0), &p(0.0, 0.0), &p(1.0, 0.0)),
            Err(ShapeError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn regular_64_half_perimeter_near_pi() {
        let c = regular(64).unwrap();
        let h = Homothet { center: p(0.0, 0.0), scale: rat(1.0) };
        let x = c.vertices()[0].exact.clone();
        let y = c.vertices()[32].exact.clone();
        let axis_dir = y.sub(&x);
        let l = c.upper_arc(&h, &y, &x, &y, &axis_dir).unwrap();
        // Half the perimeter of the inscribed 64-gon.
        let exact = 64.0 * libm::sin(core::f64::consts::PI / 64.0);
        assert!((l - exact).abs() < 1e-9, "{l}");
        assert!((l - core::f64::consts::PI).abs() < 1.3e-3);
    }

    #[test]
    fn presets_parse() {
        assert_eq!(preset("square").unwrap().len(), 4);
        assert_eq!(preset("triangle").unwrap().len(), 3);
        assert_eq!(preset("regular").unwrap().len(), 64);
        assert_eq!(preset("regular-5").unwrap().len(), 5);
        assert_eq!(preset("random-convex-7-3").unwrap().len(), 7);
        assert!(preset("blob").is_err());
        let a = random_convex(7, 11).unwrap();
        let b = random_convex(7, 11).unwrap();
        assert_eq!(a.vertices(), b.vertices());
    }
}
