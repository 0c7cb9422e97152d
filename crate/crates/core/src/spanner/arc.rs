use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::Rng;

use crate::arith::{rat, snap, Rational, Scalar};
use crate::error::SpannerError;
use crate::point::{orient, Point};
use crate::shape::{ConvexBody, Homothet, Placement};

/// Two homothets centred on an axis and a common boundary point above it.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcTriple {
    pub c1: Homothet,
    pub c2: Homothet,
    pub x: Point,
    pub axis_point: Point,
    pub axis_dir: Point,
}

/// Arc lengths from `x` to the right ends of both homothets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcCheck {
    pub l1: f64,
    pub l2: f64,
    /// `|r_1 r_2|`.
    pub gap: f64,
    pub holds: bool,
}

fn violated(what: &str) -> SpannerError {
    SpannerError::PreconditionViolated(String::from(what))
}

/// Axis parameters `(left, right)` of the chord `h` cuts from the axis,
/// with `point = axis_point + t axis_dir`.
fn ends(body: &ConvexBody, h: &Homothet, a: &Point, d: &Point) -> (Rational, Rational) {
    let t = h.center.sub(a).dot(d) / d.dot(d);
    let o = Point::origin();
    let left = &h.scale / body.distance(&o, &d.neg());
    let right = &h.scale / body.distance(&o, d);
    (&t - left, t + right)
}

/// Check `L_2 <= L_1 + kappa |r_1 r_2|` for homothets `c1`, `c2` whose
/// centres lie on the axis through `axis_point` with direction `axis_dir`,
/// where `L_i` is the length of the arc of `c_i` from `x` to its rightmost
/// axis point that stays on or above the axis. The comparison allows a
/// relative slack of `1e-9`.
pub fn arc_inequality_check(
    body: &ConvexBody,
    c1: &Homothet,
    c2: &Homothet,
    x: &Point,
    axis_point: &Point,
    axis_dir: &Point,
    kappa: f64,
) -> Result<ArcCheck, SpannerError> {
    let zero = rat(0.0);
    if axis_dir.dot(axis_dir) == zero {
        return Err(violated("axis direction is zero"));
    }
    let ahead = axis_point.add(axis_dir);
    for (h, name) in [(c1, "C1"), (c2, "C2")] {
        if orient(axis_point, &ahead, &h.center).unwrap() != Ordering::Equal {
            return Err(SpannerError::PreconditionViolated(format!("centre of {name} is off the axis")));
        }
        if h.scale <= zero {
            return Err(SpannerError::PreconditionViolated(format!("scale of {name} is not positive")));
        }
    }
    let along = |p: &Point| p.sub(axis_point).dot(axis_dir);
    if along(&c1.center) >= along(&c2.center) {
        return Err(violated("centre of C1 is not left of centre of C2"));
    }
    let (l1, r1) = ends(body, c1, axis_point, axis_dir);
    let (l2, r2) = ends(body, c2, axis_point, axis_dir);
    if r1 > r2 {
        return Err(violated("r1 is right of r2"));
    }
    if l1 > l2 {
        return Err(violated("l1 is right of l2"));
    }
    if l2 >= r1 {
        return Err(violated("l2 is not left of r1"));
    }
    if orient(axis_point, &ahead, x).unwrap() == Ordering::Less {
        return Err(violated("x is below the axis"));
    }
    if body.classify(c1, x) != Placement::Boundary || body.classify(c2, x) != Placement::Boundary {
        return Err(violated("x is not on both boundaries"));
    }
    let r1p = axis_point.along(axis_dir, &r1);
    let r2p = axis_point.along(axis_dir, &r2);
    let arc = |h: &Homothet, to: &Point| {
        body.upper_arc(h, x, to, axis_point, axis_dir)
            .map_err(|e| SpannerError::PreconditionViolated(format!("{e}")))
    };
    let l1 = arc(c1, &r1p)?;
    let l2 = arc(c2, &r2p)?;
    let gap = (&r2 - &r1).approx() * libm::sqrt(axis_dir.dot(axis_dir).approx());
    let holds = l2 <= (l1 + kappa * gap) * (1.0 + 1e-9);
    Ok(ArcCheck { l1, l2, gap, holds })
}

/// Intersection points of the boundaries of two homothets, exactly.
fn boundary_crossings(body: &ConvexBody, c1: &Homothet, c2: &Homothet) -> Vec<Point> {
    let f1 = body.homothet_vertices_f64(c1.center.approx(), c1.scale.approx());
    let f2 = body.homothet_vertices_f64(c2.center.approx(), c2.scale.approx());
    let rays = body.rays();
    let m = rays.len();
    let mut cache: Vec<Option<Point>> = alloc::vec![None; 2 * m];
    let mut vertex = |h: usize, k: usize| -> Point {
        let c = if h == 0 { c1 } else { c2 };
        cache[h * m + k % m].get_or_insert_with(|| c.center.add(&rays[k % m].exact.scale(&c.scale))).clone()
    };
    // Edge pairs whose f64 intersection parameters are clearly outside
    // [0, 1] cannot meet; everything else is decided exactly.
    let near = |i: usize, j: usize| -> bool {
        let (a, b) = (f1[i], f1[(i + 1) % f1.len()]);
        let (c, d) = (f2[j], f2[(j + 1) % f2.len()]);
        let r = [b[0] - a[0], b[1] - a[1]];
        let s = [d[0] - c[0], d[1] - c[1]];
        let ca = [c[0] - a[0], c[1] - a[1]];
        let den = r[0] * s[1] - r[1] * s[0];
        let scale = (r[0].abs() + r[1].abs()) * (s[0].abs() + s[1].abs());
        if den.abs() <= 1e-6 * scale {
            return true;
        }
        let t = (ca[0] * s[1] - ca[1] * s[0]) / den;
        let u = (ca[0] * r[1] - ca[1] * r[0]) / den;
        (-1e-6..=1.0 + 1e-6).contains(&t) && (-1e-6..=1.0 + 1e-6).contains(&u)
    };
    let mut out: Vec<Point> = Vec::new();
    for i in 0..f1.len() {
        for j in 0..f2.len() {
            // Edges with the same index are parallel.
            if i == j || !near(i, j) {
                continue;
            }
            let (a, b) = (vertex(0, i), vertex(0, i + 1));
            let (c, d) = (vertex(1, j), vertex(1, j + 1));
            let r = b.sub(&a);
            let s = d.sub(&c);
            let den = r.cross(&s);
            if den == rat(0.0) {
                continue;
            }
            let t = c.sub(&a).cross(&s) / &den;
            let u = c.sub(&a).cross(&r) / &den;
            let unit = rat(1.0);
            if t >= rat(0.0) && t <= unit && u >= rat(0.0) && u <= unit {
                let p = a.along(&r, &t);
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// A random instance meeting the preconditions of
/// [`arc_inequality_check`], or `None` when the draw misses them.
pub fn sample_arc_triple<R: Rng>(body: &ConvexBody, rng: &mut R) -> Option<ArcTriple> {
    let f = |v: f64| rat(snap(v, 20));
    let theta = rng.random::<f64>() * core::f64::consts::TAU;
    let axis_dir = Point::new(f(libm::cos(theta)), f(libm::sin(theta)));
    let axis_point = Point::new(f(rng.random::<f64>() * 4.0 - 2.0), f(rng.random::<f64>() * 4.0 - 2.0));
    let t2 = f(0.01 + rng.random::<f64>() * 2.0);
    let c1 = Homothet { center: axis_point.clone(), scale: f(0.1 + rng.random::<f64>() * 2.0) };
    let c2 = Homothet { center: axis_point.along(&axis_dir, &t2), scale: f(0.1 + rng.random::<f64>() * 2.0) };
    let (l1, r1) = ends(body, &c1, &axis_point, &axis_dir);
    let (l2, r2) = ends(body, &c2, &axis_point, &axis_dir);
    if r1 > r2 || l1 > l2 || l2 >= r1 {
        return None;
    }
    let ahead = axis_point.add(&axis_dir);
    let xs: Vec<Point> = boundary_crossings(body, &c1, &c2)
        .into_iter()
        .filter(|p| orient(&axis_point, &ahead, p).unwrap() != Ordering::Less)
        .collect();
    if xs.is_empty() {
        return None;
    }
    let x = xs[rng.random_range(0..xs.len())].clone();
    Some(ArcTriple { c1, c2, x, axis_point, axis_dir })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::compute_params;
    use crate::shape::{equilateral_triangle, square};
    use rand::SeedableRng;

    #[test]
    fn identical_homothets_are_rejected() {
        let body = square();
        let h = Homothet { center: Point::from_f64(0.0, 0.0), scale: rat(1.0) };
        let e = arc_inequality_check(&body, &h, &h, &Point::from_f64(0.0, 1.0), &Point::from_f64(0.0, 0.0), &Point::from_f64(1.0, 0.0), 2.0);
        assert!(matches!(e, Err(SpannerError::PreconditionViolated(_))));
    }

    #[test]
    fn square_instance() {
        // C1 = [-1,1]^2, C2 = [-0.5,1.5] x [-1,1]; their tops overlap, so
        // take x = (1, 1).
        let body = square();
        let c1 = Homothet { center: Point::from_f64(0.0, 0.0), scale: rat(1.0) };
        let c2 = Homothet { center: Point::from_f64(0.5, 0.0), scale: rat(1.0) };
        let a = Point::from_f64(0.0, 0.0);
        let d = Point::from_f64(1.0, 0.0);
        let r = arc_inequality_check(&body, &c1, &c2, &Point::from_f64(1.0, 1.0), &a, &d, 2.0).unwrap();
        assert_eq!((r.l1, r.l2, r.gap), (1.0, 1.5, 0.5));
        assert!(r.holds);
        let r = arc_inequality_check(&body, &c1, &c2, &Point::from_f64(1.0, 1.0), &a, &d, 0.5).unwrap();
        assert!(!r.holds);
    }

    #[test]
    fn random_triples_hold() {
        for body in [square(), equilateral_triangle()] {
            let params = compute_params(&body, 1e-3);
            let body = body.with_origin(&params.origin_star).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
            let mut done = 0;
            while done < 200 {
                let Some(t) = sample_arc_triple(&body, &mut rng) else { continue };
                let r = arc_inequality_check(&body, &t.c1, &t.c2, &t.x, &t.axis_point, &t.axis_dir, params.kappa).unwrap();
                assert!(r.holds, "{t:?} {r:?}");
                done += 1;
            }
        }
    }
}
