//! Delaunay graphs of point sets under convex polygonal distance functions,
//! the shape parameters that bound their Euclidean stretch, and checkers for
//! the geometric facts that the stretch bound rests on.
//!
//! All predicates are exact: they are evaluated with certified interval
//! arithmetic and repeated with rationals when the intervals cannot decide.

#![no_std]

extern crate alloc;
#[cfg(any(feature = "std", test))]
extern crate std;

pub mod arith;
pub mod delaunay;
pub mod error;
pub mod params;
pub mod point;
pub mod shape;
pub mod spanner;

pub use arith::{Interval, Rational};
pub use error::{DelaunayError, ParamError, ShapeError, SpannerError};
pub use point::{Point, XPoint};
pub use shape::{validate_body, BoundaryPoint, ConeForm, ConvexBody, Homothet, Placement};
