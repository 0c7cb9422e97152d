//! Scalars for geometric predicates.
//!
//! Two implementations of [`Scalar`] exist. [`Interval`] is a floating-point
//! enclosure with outward rounding; every sign query either returns the true
//! sign or [`Uncertain`]. [`Rational`] is exact and never uncertain. Algorithms
//! run with `Interval` first and are repeated with `Rational` when any
//! decision came back uncertain (see [`filtered`]).

use core::cmp::Ordering;
use core::fmt::Debug;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number.
pub type Rational = num_rational::BigRational;

/// A sign or comparison could not be certified at the current precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Uncertain;

pub type Cert<T> = Result<T, Uncertain>;

pub trait Scalar:
    Clone + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    /// Division; uncertain when the divisor may be zero.
    fn try_div(&self, rhs: &Self) -> Cert<Self>;
    fn sign(&self) -> Cert<Ordering>;
    fn half(&self) -> Self;
    /// Enclosure of the larger value; never uncertain.
    fn max_of(&self, other: &Self) -> Self;
    fn min_of(&self, other: &Self) -> Self;
    /// Best floating-point approximation.
    fn approx(&self) -> f64;

    fn cmp_to(&self, other: &Self) -> Cert<Ordering> {
        (self.clone() - other.clone()).sign()
    }
}

/// Run the interval version of a computation, and the exact version only if
/// the interval version could not certify every decision.
pub fn filtered<T>(fast: impl FnOnce() -> Cert<T>, exact: impl FnOnce() -> Cert<T>) -> T {
    match fast() {
        Ok(v) => v,
        Err(Uncertain) => exact().expect("exact arithmetic decides every predicate"),
    }
}

// ---------------------------------------------------------------- Interval

/// Closed floating-point interval `[lo, hi]` with outward rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    let c = 134_217_729.0 * a;
    let hi = c - (c - a);
    (hi, a - hi)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

#[inline]
fn round_pair(s: f64, e: f64) -> (f64, f64) {
    if !s.is_finite() || e.is_nan() {
        (f64::NEG_INFINITY, f64::INFINITY)
    } else if e > 0.0 {
        (s, s.next_up())
    } else if e < 0.0 {
        (s.next_down(), s)
    } else {
        (s, s)
    }
}

#[inline]
fn add_r(a: f64, b: f64) -> (f64, f64) {
    let (s, e) = two_sum(a, b);
    round_pair(s, e)
}

#[inline]
fn mul_r(a: f64, b: f64) -> (f64, f64) {
    if a == 0.0 || b == 0.0 {
        return (0.0, 0.0);
    }
    if a.abs() > 1e150 || b.abs() > 1e150 || a.abs() < 1e-140 || b.abs() < 1e-140 {
        return (f64::NEG_INFINITY, f64::INFINITY);
    }
    let (p, e) = two_prod(a, b);
    round_pair(p, e)
}

#[inline]
fn div_r(a: f64, b: f64) -> (f64, f64) {
    if a == 0.0 {
        return (0.0, 0.0);
    }
    if !a.is_finite() || !b.is_finite() || a.abs() > 1e150 || b.abs() > 1e150 || a.abs() < 1e-140 || b.abs() < 1e-140 {
        return (f64::NEG_INFINITY, f64::INFINITY);
    }
    let q = a / b;
    if !q.is_finite() || q.abs() < 1e-140 {
        return (f64::NEG_INFINITY, f64::INFINITY);
    }
    let (ph, pl) = two_prod(q, b);
    // a - ph is exact (Sterbenz); the sign of the final difference is exact.
    let r = (a - ph) - pl;
    let s = if (r > 0.0) == (b > 0.0) { 1.0 } else { -1.0 };
    if r == 0.0 {
        (q, q)
    } else {
        round_pair(q, s)
    }
}

impl Interval {
    pub fn point(v: f64) -> Self {
        Interval { lo: v, hi: v }
    }

    /// Interval with the given bounds; `lo <= hi` is required.
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Smallest interval containing the rational `r`.
    pub fn enclose(r: &Rational) -> Self {
        let f = r.to_f64().unwrap_or(f64::NAN);
        if !f.is_finite() {
            return Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY };
        }
        match Rational::from_float(f) {
            Some(back) => match back.cmp(r) {
                Ordering::Equal => Interval::point(f),
                Ordering::Less => Interval { lo: f, hi: f.next_up() },
                Ordering::Greater => Interval { lo: f.next_down(), hi: f },
            },
            None => Interval { lo: f.next_down(), hi: f.next_up() },
        }
    }
}

impl Add for Interval {
    type Output = Interval;
    #[inline]
    fn add(self, o: Interval) -> Interval {
        Interval { lo: add_r(self.lo, o.lo).0, hi: add_r(self.hi, o.hi).1 }
    }
}

impl Sub for Interval {
    type Output = Interval;
    #[inline]
    fn sub(self, o: Interval) -> Interval {
        self + (-o)
    }
}

impl Neg for Interval {
    type Output = Interval;
    #[inline]
    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

impl Mul for Interval {
    type Output = Interval;
    #[inline]
    fn mul(self, o: Interval) -> Interval {
        if self.lo == self.hi && o.lo == o.hi {
            let (lo, hi) = mul_r(self.lo, o.lo);
            return Interval { lo, hi };
        }
        let (a, b) = (self, o);
        let (x, y) = if a.lo >= 0.0 {
            if b.lo >= 0.0 {
                ((a.lo, b.lo), (a.hi, b.hi))
            } else if b.hi <= 0.0 {
                ((a.hi, b.lo), (a.lo, b.hi))
            } else {
                ((a.hi, b.lo), (a.hi, b.hi))
            }
        } else if a.hi <= 0.0 {
            if b.lo >= 0.0 {
                ((a.lo, b.hi), (a.hi, b.lo))
            } else if b.hi <= 0.0 {
                ((a.hi, b.hi), (a.lo, b.lo))
            } else {
                ((a.lo, b.hi), (a.lo, b.lo))
            }
        } else if b.lo >= 0.0 {
            ((a.lo, b.hi), (a.hi, b.hi))
        } else if b.hi <= 0.0 {
            ((a.hi, b.lo), (a.lo, b.lo))
        } else {
            let l = mul_r(a.lo, b.hi).0.min(mul_r(a.hi, b.lo).0);
            let h = mul_r(a.lo, b.lo).1.max(mul_r(a.hi, b.hi).1);
            return Interval { lo: l, hi: h };
        };
        Interval { lo: mul_r(x.0, x.1).0, hi: mul_r(y.0, y.1).1 }
    }
}

impl Scalar for Interval {
    #[inline]
    fn zero() -> Self {
        Interval::point(0.0)
    }

    fn from_i64(v: i64) -> Self {
        let f = v as f64;
        if f as i64 == v && f.abs() < 9.0e15 {
            Interval::point(f)
        } else {
            Interval::enclose(&Rational::from_integer(BigInt::from(v)))
        }
    }

    fn from_rational(r: &Rational) -> Self {
        Interval::enclose(r)
    }

    fn try_div(&self, o: &Self) -> Cert<Self> {
        if !(o.lo > 0.0 || o.hi < 0.0) {
            return Err(Uncertain);
        }
        if self.lo == self.hi && o.lo == o.hi {
            let (lo, hi) = div_r(self.lo, o.lo);
            return Ok(Interval { lo, hi });
        }
        let c = [div_r(self.lo, o.lo), div_r(self.lo, o.hi), div_r(self.hi, o.lo), div_r(self.hi, o.hi)];
        let mut lo = c[0].0;
        let mut hi = c[0].1;
        for &(l, h) in &c[1..] {
            lo = lo.min(l);
            hi = hi.max(h);
        }
        Ok(Interval { lo, hi })
    }

    #[inline]
    fn sign(&self) -> Cert<Ordering> {
        if self.lo > 0.0 {
            Ok(Ordering::Greater)
        } else if self.hi < 0.0 {
            Ok(Ordering::Less)
        } else if self.lo == 0.0 && self.hi == 0.0 {
            Ok(Ordering::Equal)
        } else {
            Err(Uncertain)
        }
    }

    fn half(&self) -> Self {
        Interval { lo: self.lo * 0.5, hi: self.hi * 0.5 }
    }

    fn max_of(&self, o: &Self) -> Self {
        Interval { lo: self.lo.max(o.lo), hi: self.hi.max(o.hi) }
    }

    fn min_of(&self, o: &Self) -> Self {
        Interval { lo: self.lo.min(o.lo), hi: self.hi.min(o.hi) }
    }

    fn approx(&self) -> f64 {
        if self.lo == self.hi {
            self.lo
        } else {
            0.5 * self.lo + 0.5 * self.hi
        }
    }
}

// ---------------------------------------------------------------- Rational

impl Scalar for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn try_div(&self, o: &Self) -> Cert<Self> {
        if o.is_zero() {
            Err(Uncertain)
        } else {
            Ok(self / o)
        }
    }

    fn sign(&self) -> Cert<Ordering> {
        Ok(if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        })
    }

    fn cmp_to(&self, other: &Self) -> Cert<Ordering> {
        Ok(self.cmp(other))
    }

    fn half(&self) -> Self {
        self / Rational::from_integer(BigInt::from(2))
    }

    fn max_of(&self, o: &Self) -> Self {
        if self >= o { self.clone() } else { o.clone() }
    }

    fn min_of(&self, o: &Self) -> Self {
        if self <= o { self.clone() } else { o.clone() }
    }

    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// Exact conversion of a finite float.
pub fn rat(v: f64) -> Rational {
    Rational::from_float(v).expect("finite coordinate")
}

pub fn rat_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_one() -> Rational {
    Rational::one()
}

/// Round `v` to the nearest multiple of `2^-bits`.
pub fn snap(v: f64, bits: i32) -> f64 {
    let s = libm::ldexp(1.0, bits);
    libm::round(v * s) / s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn contains(i: &Interval, r: &Rational) -> bool {
        rat(i.lo()) <= *r && *r <= rat(i.hi())
    }

    #[test]
    fn exact_ops_stay_points() {
        let a = Interval::point(1.5);
        let b = Interval::point(0.25);
        assert_eq!(a + b, Interval::point(1.75));
        assert_eq!(a * b, Interval::point(0.375));
        assert_eq!(a.try_div(&b).unwrap(), Interval::point(6.0));
        assert_eq!((a - a).sign(), Ok(Ordering::Equal));
    }

    #[test]
    fn inexact_division_is_bracketed() {
        let q = Interval::point(1.0).try_div(&Interval::point(3.0)).unwrap();
        assert!(q.lo() < q.hi());
        assert!(contains(&q, &rat_frac(1, 3)));
    }

    #[test]
    fn zero_divisor_is_uncertain() {
        let z = Interval::new(-1.0, 1.0);
        assert_eq!(Interval::point(1.0).try_div(&z), Err(Uncertain));
        assert_eq!(Rational::from_i64(1).try_div(&Rational::from_i64(0)), Err(Uncertain));
    }

    #[test]
    fn enclose_third() {
        let i = Interval::enclose(&rat_frac(1, 3));
        assert!(contains(&i, &rat_frac(1, 3)));
        assert_eq!(i.hi(), i.lo().next_up());
    }

    proptest! {
        #[test]
        fn ops_enclose_exact_results(a in -1e6f64..1e6, b in -1e6f64..1e6, c in 0.001f64..1e3) {
            let (ra, rb, rc) = (rat(a), rat(b), rat(c));
            let (ia, ib, ic) = (Interval::point(a), Interval::point(b), Interval::point(c));
            prop_assert!(contains(&(ia + ib), &(&ra + &rb)));
            prop_assert!(contains(&(ia - ib), &(&ra - &rb)));
            prop_assert!(contains(&(ia * ib), &(&ra * &rb)));
            prop_assert!(contains(&ia.try_div(&ic).unwrap(), &(&ra / &rc)));
            let wide = (ia + ic) * (ib - ic);
            prop_assert!(contains(&wide, &((&ra + &rc) * (&rb - &rc))));
            let q = (ia * ib).try_div(&(ic + Interval::point(0.5))).unwrap();
            prop_assert!(contains(&q, &((&ra * &rb) / (&rc + rat(0.5)))));
        }

        #[test]
        fn certified_signs_are_true(a in -1e3f64..1e3, b in -1e3f64..1e3, c in -1e3f64..1e3) {
            let i = Interval::point(a) * Interval::point(b) - Interval::point(c) * Interval::point(a);
            let r = rat(a) * rat(b) - rat(c) * rat(a);
            if let Ok(s) = i.sign() {
                prop_assert_eq!(s, r.sign().unwrap());
            }
        }
    }
}
