//! Points over a generic scalar and filtered orientation predicates.

use core::cmp::Ordering;

use crate::arith::{filtered, rat, Cert, Interval, Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Pt<S> {
    pub x: S,
    pub y: S,
}

/// Exact point.
pub type Point = Pt<Rational>;

impl<S: Scalar> Pt<S> {
    pub fn new(x: S, y: S) -> Self {
        Pt { x, y }
    }

    pub fn origin() -> Self {
        Pt { x: S::zero(), y: S::zero() }
    }

    pub fn add(&self, o: &Self) -> Self {
        Pt { x: self.x.clone() + o.x.clone(), y: self.y.clone() + o.y.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Pt { x: self.x.clone() - o.x.clone(), y: self.y.clone() - o.y.clone() }
    }

    pub fn neg(&self) -> Self {
        Pt { x: -self.x.clone(), y: -self.y.clone() }
    }

    pub fn scale(&self, s: &S) -> Self {
        Pt { x: self.x.clone() * s.clone(), y: self.y.clone() * s.clone() }
    }

    pub fn dot(&self, o: &Self) -> S {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone()
    }

    pub fn cross(&self, o: &Self) -> S {
        self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone()
    }

    /// Counter-clockwise rotation by a right angle.
    pub fn perp(&self) -> Self {
        Pt { x: -self.y.clone(), y: self.x.clone() }
    }

    pub fn mid(&self, o: &Self) -> Self {
        Pt { x: (self.x.clone() + o.x.clone()).half(), y: (self.y.clone() + o.y.clone()).half() }
    }

    /// `self + t * d`.
    pub fn along(&self, d: &Self, t: &S) -> Self {
        Pt { x: self.x.clone() + d.x.clone() * t.clone(), y: self.y.clone() + d.y.clone() * t.clone() }
    }

    pub fn approx(&self) -> [f64; 2] {
        [self.x.approx(), self.y.approx()]
    }

    pub fn convert<T: Scalar>(p: &Point) -> Pt<T> {
        Pt { x: T::from_rational(&p.x), y: T::from_rational(&p.y) }
    }
}

impl Point {
    /// Exact point from floating-point coordinates.
    pub fn from_f64(x: f64, y: f64) -> Point {
        Pt { x: rat(x), y: rat(y) }
    }
}

/// Scalars that can read an [`XPoint`] without conversion cost.
pub trait Lift: Scalar {
    fn lift(p: &XPoint) -> Pt<Self>;
}

impl Lift for Interval {
    #[inline]
    fn lift(p: &XPoint) -> Pt<Interval> {
        p.fast.clone()
    }
}

impl Lift for Rational {
    #[inline]
    fn lift(p: &XPoint) -> Pt<Rational> {
        p.exact.clone()
    }
}

/// Exact point together with a certified floating-point enclosure and a
/// nearest-float approximation.
#[derive(Debug, Clone, PartialEq)]
pub struct XPoint {
    pub exact: Point,
    pub fast: Pt<Interval>,
    pub f: [f64; 2],
}

impl XPoint {
    pub fn new(exact: Point) -> XPoint {
        let fast: Pt<Interval> = Pt::<Interval>::convert(&exact);
        let f = exact.approx();
        XPoint { exact, fast, f }
    }

    pub fn from_f64(x: f64, y: f64) -> XPoint {
        XPoint::new(Point::from_f64(x, y))
    }
}

impl From<Point> for XPoint {
    fn from(p: Point) -> XPoint {
        XPoint::new(p)
    }
}

/// Sign of the turn `a -> b -> c`; `Greater` is counter-clockwise.
pub fn orient<S: Scalar>(a: &Pt<S>, b: &Pt<S>, c: &Pt<S>) -> Cert<Ordering> {
    b.sub(a).cross(&c.sub(a)).sign()
}

pub fn orient_x(a: &XPoint, b: &XPoint, c: &XPoint) -> Ordering {
    filtered(|| orient(&a.fast, &b.fast, &c.fast), || orient(&a.exact, &b.exact, &c.exact))
}

/// Position of a point relative to a closed segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OnSegment {
    Off,
    Endpoint,
    Interior,
}

pub fn on_segment<S: Scalar>(p: &Pt<S>, a: &Pt<S>, b: &Pt<S>) -> Cert<OnSegment> {
    if orient(a, b, p)? != Ordering::Equal {
        return Ok(OnSegment::Off);
    }
    let d = b.sub(a);
    let ta = p.sub(a).dot(&d).sign()?;
    let tb = p.sub(b).dot(&d).sign()?;
    Ok(match (ta, tb) {
        (Ordering::Equal, _) | (_, Ordering::Equal) => OnSegment::Endpoint,
        (Ordering::Greater, Ordering::Less) => OnSegment::Interior,
        _ => OnSegment::Off,
    })
}

/// Certified coordinate equality.
pub fn same<S: Scalar>(a: &Pt<S>, b: &Pt<S>) -> Cert<bool> {
    let dx = (a.x.clone() - b.x.clone()).sign();
    let dy = (a.y.clone() - b.y.clone()).sign();
    match (dx, dy) {
        (Ok(Ordering::Equal), Ok(Ordering::Equal)) => Ok(true),
        (Ok(o), _) | (_, Ok(o)) if o != Ordering::Equal => Ok(false),
        _ => Err(crate::arith::Uncertain),
    }
}

/// How two closed segments meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentContact {
    Disjoint,
    /// They share exactly one common endpoint and nothing else.
    SharedEndpoint,
    /// Any other contact: proper crossing, touching, or overlap.
    Conflict,
}

pub fn segment_contact<S: Scalar>(a: &Pt<S>, b: &Pt<S>, c: &Pt<S>, d: &Pt<S>) -> Cert<SegmentContact> {
    let o1 = orient(a, b, c)?;
    let o2 = orient(a, b, d)?;
    let o3 = orient(c, d, a)?;
    let o4 = orient(c, d, b)?;
    let shared = same(a, c)? || same(a, d)? || same(b, c)? || same(b, d)?;
    if o1 == Ordering::Equal && o2 == Ordering::Equal {
        // Collinear: they either overlap, touch at one point, or are apart.
        let dir = b.sub(a);
        let key = |p: &Pt<S>| p.sub(a).dot(&dir);
        let (ka, kb, kc, kd) = (S::zero(), key(b), key(c), key(d));
        let (lo1, hi1) = (ka, kb);
        let (lo2, hi2) = if kc.cmp_to(&kd)? == Ordering::Greater { (kd, kc) } else { (kc, kd) };
        let gap1 = lo2.cmp_to(&hi1)?;
        let gap2 = lo1.cmp_to(&hi2)?;
        if gap1 == Ordering::Greater || gap2 == Ordering::Greater {
            return Ok(SegmentContact::Disjoint);
        }
        if (gap1 == Ordering::Equal || gap2 == Ordering::Equal) && shared {
            return Ok(SegmentContact::SharedEndpoint);
        }
        return Ok(SegmentContact::Conflict);
    }
    if o1 == o2 || o3 == o4 {
        return Ok(SegmentContact::Disjoint);
    }
    if shared {
        // Non-collinear segments sharing an endpoint meet only there.
        return Ok(SegmentContact::SharedEndpoint);
    }
    Ok(SegmentContact::Conflict)
}

pub fn segment_contact_x(a: &XPoint, b: &XPoint, c: &XPoint, d: &XPoint) -> SegmentContact {
    filtered(
        || segment_contact(&a.fast, &b.fast, &c.fast, &d.fast),
        || segment_contact(&a.exact, &b.exact, &c.exact, &d.exact),
    )
}

/// Angular comparison of two nonzero directions, measured counter-clockwise
/// from the positive x axis in `[0, 2pi)`.
pub fn angle_cmp<S: Scalar>(u: &Pt<S>, v: &Pt<S>) -> Cert<Ordering> {
    let half = |p: &Pt<S>| -> Cert<u8> {
        let y = p.y.sign()?;
        let x = p.x.sign()?;
        Ok(match (y, x) {
            (Ordering::Greater, _) => 0,
            (Ordering::Equal, Ordering::Greater) => 0,
            _ => 1,
        })
    };
    let (hu, hv) = (half(u)?, half(v)?);
    if hu != hv {
        return Ok(hu.cmp(&hv));
    }
    Ok(match u.cross(v).sign()? {
        Ordering::Greater => Ordering::Less,
        Ordering::Less => Ordering::Greater,
        Ordering::Equal => Ordering::Equal,
    })
}
