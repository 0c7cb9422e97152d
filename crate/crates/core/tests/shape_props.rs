use dgspan_core::arith::{rat_frac, rat_int};
use dgspan_core::shape::{preset, regular};
use dgspan_core::{ConvexBody, Homothet, Placement, Point, Rational};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

const PRESETS: [&str; 5] = ["square", "equilateral-triangle", "regular-5", "random-convex-7", "regular-64"];

fn body(k: usize) -> ConvexBody {
    preset(PRESETS[k % PRESETS.len()]).unwrap()
}

fn coord() -> impl Strategy<Value = Rational> {
    (-1024i64..=1024).prop_map(|v| rat_frac(v, 16))
}

fn point() -> impl Strategy<Value = Point> {
    (coord(), coord()).prop_map(|(x, y)| Point::new(x, y))
}

fn positive() -> impl Strategy<Value = Rational> {
    (1i64..=64, 1i64..=8).prop_map(|(n, d)| rat_frac(n, d))
}

/// The point of the boundary of `h` hit by the ray from its center along `dir`.
fn boundary_along(b: &ConvexBody, h: &Homothet, dir: &Point) -> Point {
    let g = b.gauge(dir);
    h.center.add(&dir.scale(&(h.scale.clone() / g)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn triangle_inequality(k in 0usize..5, x in point(), y in point(), z in point()) {
        let b = body(k);
        prop_assert!(b.distance(&x, &z) <= b.distance(&x, &y) + b.distance(&y, &z));
    }

    #[test]
    fn zero_only_on_the_diagonal(k in 0usize..5, x in point(), y in point()) {
        let b = body(k);
        let d = b.distance(&x, &y);
        prop_assert!(!d.is_negative());
        prop_assert_eq!(d.is_zero(), x == y);
    }

    #[test]
    fn homogeneous_and_translation_invariant(k in 0usize..5, x in point(), y in point(), t in point(), l in positive()) {
        let b = body(k);
        let d = b.distance(&x, &y);
        prop_assert_eq!(b.distance(&x.scale(&l), &y.scale(&l)), d.clone() * l);
        prop_assert_eq!(b.distance(&x.add(&t), &y.add(&t)), d);
    }

    #[test]
    fn symmetric_bodies_give_symmetric_distances(x in point(), y in point()) {
        for b in [preset("square").unwrap(), regular(64).unwrap()] {
            prop_assert_eq!(b.distance(&x, &y), b.distance(&y, &x));
        }
    }

    #[test]
    fn classify_agrees_with_distance(k in 0usize..5, c in point(), s in positive(), p in point()) {
        let b = body(k);
        let h = Homothet { center: c.clone(), scale: s.clone() };
        let d = b.distance(&c, &p);
        let want = match d.cmp(&s) {
            core::cmp::Ordering::Less => Placement::Interior,
            core::cmp::Ordering::Equal => Placement::Boundary,
            core::cmp::Ordering::Greater => Placement::Exterior,
        };
        prop_assert_eq!(b.classify(&h, &p), want);
        let on = boundary_along(&b, &h, &p.sub(&c));
        if on != c {
            prop_assert_eq!(b.classify(&h, &on), Placement::Boundary);
        }
    }

    #[test]
    fn boundary_parameters_round_trip(k in 0usize..5, c in point(), s in positive(), dir in point()) {
        prop_assume!(dir != Point::origin());
        let b = body(k);
        let h = Homothet { center: c, scale: s };
        let p = boundary_along(&b, &h, &dir);
        let bp = b.boundary_point(&h, &p).unwrap();
        prop_assert_eq!(b.boundary_to_point(&h, &bp), p);
    }

    #[test]
    fn upper_arcs_add_up(k in 0usize..5, c in point(), s in positive(), dx in -32i64..=32, dy in 1i64..=32) {
        let b = body(k);
        let h = Homothet { center: c.clone(), scale: s.clone() };
        let axis = Point::new(rat_int(1), rat_int(0));
        let left = boundary_along(&b, &h, &axis.neg());
        let right = boundary_along(&b, &h, &axis);
        let z = boundary_along(&b, &h, &Point::new(rat_int(dx), rat_int(dy)));
        let whole = b.upper_arc(&h, &left, &right, &c, &axis).unwrap();
        let parts = b.upper_arc(&h, &left, &z, &c, &axis).unwrap() + b.upper_arc(&h, &z, &right, &c, &axis).unwrap();
        prop_assert!((whole - parts).abs() <= 1e-9 * whole);
        let lower = b.upper_arc(&h, &right, &left, &c, &axis.neg()).unwrap();
        let perimeter = b.perimeter() * dgspan_core::arith::Scalar::approx(&s);
        prop_assert!((whole + lower - perimeter).abs() <= 1e-9 * perimeter);
    }
}

#[test]
fn cone_forms_match_the_distance() {
    let mut x = 0x2545_f491_4f6c_dd1du64;
    let mut next = move || {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        rat_frac((x % 2049) as i64 - 1024, 16)
    };
    for k in 0..PRESETS.len() {
        let b = body(k);
        let p = Point::new(next(), next());
        let forms = b.cone_decomposition(&p);
        assert_eq!(forms.len(), b.len());
        for _ in 0..1000 {
            let x = Point::new(next(), next());
            let d = b.distance(&x, &p);
            let value = |f: &dgspan_core::ConeForm| f.a.clone() * &x.x + f.b.clone() * &x.y + &f.c;
            let max = forms.iter().map(value).max().unwrap();
            assert_eq!(max, d);
            let z = x.sub(&p);
            for f in &forms {
                let inside = !f.ray_from.cross(&z).is_negative() && !z.cross(&f.ray_to).is_negative();
                if inside {
                    assert_eq!(value(f), d, "{} sector {}", PRESETS[k], f.edge_index);
                }
            }
        }
    }
}
