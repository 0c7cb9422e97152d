//! JSON encodings of shapes, point sets, graphs and parameters.
//!
//! Coordinates are written as strings so that they stay exact: a finite
//! decimal when the value has one, `"p/q"` otherwise. Both forms are read
//! back, as are plain JSON numbers, which are taken at their decimal value.

use std::collections::BTreeMap;
use std::str::FromStr;

use dgspan_core::delaunay::{DelaunayGraph, SiteSet};
use dgspan_core::params::ShapeParams;
use dgspan_core::shape::validate_body;
use dgspan_core::{ConvexBody, Homothet, Point, Rational};
use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("`{0}` is not a number")]
    BadNumber(String),
    #[error("expected a point [x, y]")]
    BadPoint,
    #[error("edge {0:?} is out of range for {1} sites")]
    BadEdge((usize, usize), usize),
    #[error("witness key `{0}` is not of the form `i-j`")]
    BadWitnessKey(String),
    #[error("edge {0}-{1} has no witness")]
    MissingWitness(usize, usize),
    #[error("invalid sites: {0}")]
    Sites(#[from] dgspan_core::DelaunayError),
    #[error("invalid shape: {0}")]
    Shape(#[from] dgspan_core::ShapeError),
}

/// How coordinates are written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoordStyle {
    /// Finite decimal when one exists, `p/q` otherwise.
    #[default]
    Decimal,
    /// Always `p/q`, or an integer.
    Rational,
}

pub fn format_rational(r: &Rational, style: CoordStyle) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    if style == CoordStyle::Decimal {
        if let Some(s) = finite_decimal(r) {
            return s;
        }
    }
    format!("{}/{}", r.numer(), r.denom())
}

fn finite_decimal(r: &Rational) -> Option<String> {
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut d = r.denom().clone();
    let (mut a, mut b) = (0u32, 0u32);
    while (&d % &two).is_zero() {
        d /= &two;
        a += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        b += 1;
    }
    if !d.is_one() {
        return None;
    }
    let k = a.max(b);
    let scaled = r.numer().abs() * BigInt::from(10).pow(k) / r.denom();
    let digits = scaled.to_string();
    let k = k as usize;
    let padded = if digits.len() <= k { format!("{}{}", "0".repeat(k + 1 - digits.len()), digits) } else { digits };
    let (int, frac) = padded.split_at(padded.len() - k);
    let sign = if r.numer().sign() == Sign::Minus { "-" } else { "" };
    Some(format!("{sign}{int}.{frac}"))
}

/// Parse `"p/q"`, an integer, or a decimal with optional exponent, exactly.
pub fn parse_rational(s: &str) -> Result<Rational, FormatError> {
    let bad = || FormatError::BadNumber(s.to_string());
    let t = s.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    if exp.unsigned_abs() > 4096 {
        return Err(bad());
    }
    let digits = BigInt::from_str(&format!("{int}{frac}")).map_err(|_| bad())?;
    let e = exp - frac.len() as i64;
    let ten = BigInt::from(10).pow(e.unsigned_abs() as u32);
    let mut v = if e >= 0 { Rational::from_integer(digits * ten) } else { Rational::new(digits, ten) };
    if neg {
        v = -v;
    }
    Ok(v)
}

/// A coordinate given as a JSON string or number.
pub fn rational_from_value(v: &Value) -> Result<Rational, FormatError> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(FormatError::BadNumber(other.to_string())),
    }
}

pub fn point_from_value(v: &Value) -> Result<Point, FormatError> {
    match v.as_array().map(Vec::as_slice) {
        Some([x, y]) => Ok(Point::new(rational_from_value(x)?, rational_from_value(y)?)),
        _ => Err(FormatError::BadPoint),
    }
}

pub fn point_to_value(p: &Point, style: CoordStyle) -> [String; 2] {
    [format_rational(&p.x, style), format_rational(&p.y, style)]
}

/// A float as a JSON number with 17 significant digits; non-finite values
/// become `null`.
pub fn f17(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let n = serde_json::Number::from_str(&format!("{x:.16e}")).expect("formatted float is valid JSON");
    Value::Number(n)
}

pub fn ser_f17<S: serde::Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    f17(*x).serialize(s)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

// ---------------------------------------------------------------- shapes

#[derive(Serialize)]
struct ShapeJson {
    vertices: Vec<[String; 2]>,
    origin: [String; 2],
}

/// `{"vertices": [[x, y], ...], "origin": [x, y]}`. Without `origin` the
/// vertex centroid is used.
pub fn parse_shape(text: &str) -> Result<ConvexBody, FormatError> {
    let v: Value = serde_json::from_str(text)?;
    let verts = v
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or(FormatError::BadPoint)?
        .iter()
        .map(point_from_value)
        .collect::<Result<Vec<_>, _>>()?;
    let origin = match v.get("origin") {
        Some(o) => point_from_value(o)?,
        None => centroid(&verts),
    };
    Ok(validate_body(&verts, &origin)?)
}

fn centroid(pts: &[Point]) -> Point {
    let n = Rational::from_integer(BigInt::from(pts.len().max(1)));
    let sx = pts.iter().fold(Rational::zero(), |a, p| a + &p.x);
    let sy = pts.iter().fold(Rational::zero(), |a, p| a + &p.y);
    Point::new(sx / &n, sy / n)
}

pub fn shape_to_json(body: &ConvexBody, style: CoordStyle) -> String {
    to_json(&ShapeJson {
        vertices: body.vertices().iter().map(|p| point_to_value(&p.exact, style)).collect(),
        origin: point_to_value(&body.origin().exact, style),
    })
}

// ---------------------------------------------------------------- points

#[derive(Serialize)]
struct PointsJson {
    points: Vec<[String; 2]>,
}

/// `{"points": [[x, y], ...]}`.
pub fn parse_points(text: &str) -> Result<Vec<Point>, FormatError> {
    let v: Value = serde_json::from_str(text)?;
    points_of(&v)
}

fn points_of(v: &Value) -> Result<Vec<Point>, FormatError> {
    v.get("points").and_then(Value::as_array).ok_or(FormatError::BadPoint)?.iter().map(point_from_value).collect()
}

pub fn parse_sites(text: &str) -> Result<SiteSet, FormatError> {
    Ok(SiteSet::new(parse_points(text)?)?)
}

pub fn sites_to_json(sites: &SiteSet, style: CoordStyle) -> String {
    to_json(&PointsJson { points: sites.points().iter().map(|p| point_to_value(&p.exact, style)).collect() })
}

// ---------------------------------------------------------------- graphs

#[derive(Serialize)]
struct WitnessJson {
    center: [String; 2],
    scale: String,
}

#[derive(Serialize)]
struct GraphJson {
    points: Vec<[String; 2]>,
    edges: Vec<[usize; 2]>,
    witnesses: BTreeMap<String, WitnessJson>,
}

fn witness_key(e: (usize, usize)) -> String {
    format!("{}-{}", e.0, e.1)
}

/// `{"points": [...], "edges": [[i, j], ...], "witnesses": {"i-j":
/// {"center": [x, y], "scale": s}}}`.
pub fn graph_to_json(g: &DelaunayGraph, style: CoordStyle) -> String {
    to_json(&GraphJson {
        points: g.sites.points().iter().map(|p| point_to_value(&p.exact, style)).collect(),
        edges: g.edges.iter().map(|&(i, j)| [i, j]).collect(),
        witnesses: g
            .witnesses
            .iter()
            .map(|(&e, h)| {
                (
                    witness_key(e),
                    WitnessJson { center: point_to_value(&h.center, style), scale: format_rational(&h.scale, style) },
                )
            })
            .collect(),
    })
}

/// Graph from its JSON form. Every edge needs a witness; the witnesses
/// are not checked here.
pub fn parse_graph(text: &str) -> Result<DelaunayGraph, FormatError> {
    let v: Value = serde_json::from_str(text)?;
    let sites = SiteSet::new(points_of(&v)?)?;
    let n = sites.len();
    let mut wit: BTreeMap<(usize, usize), Homothet> = BTreeMap::new();
    if let Some(map) = v.get("witnesses").and_then(Value::as_object) {
        for (k, w) in map {
            let bad = || FormatError::BadWitnessKey(k.clone());
            let (a, b) = k.split_once('-').ok_or_else(bad)?;
            let (a, b): (usize, usize) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
            let center = point_from_value(w.get("center").ok_or(FormatError::BadPoint)?)?;
            let scale = rational_from_value(w.get("scale").unwrap_or(&Value::Null))?;
            wit.insert((a.min(b), a.max(b)), Homothet { center, scale });
        }
    }
    let mut found = Vec::new();
    for e in v.get("edges").and_then(Value::as_array).map(Vec::as_slice).unwrap_or(&[]) {
        let pair = match e.as_array().map(Vec::as_slice) {
            Some([a, b]) => (a.as_u64(), b.as_u64()),
            _ => (None, None),
        };
        let (Some(a), Some(b)) = pair else { return Err(FormatError::BadPoint) };
        let (a, b) = (a as usize, b as usize);
        if a >= n || b >= n || a == b {
            return Err(FormatError::BadEdge((a, b), n));
        }
        let e = (a.min(b), a.max(b));
        let h = wit.get(&e).cloned().ok_or(FormatError::MissingWitness(e.0, e.1))?;
        found.push((e, h));
    }
    Ok(DelaunayGraph::from_witnesses(sites, found))
}

// ---------------------------------------------------------------- params

#[derive(Debug, Clone, Serialize)]
pub struct ParamsJson {
    #[serde(serialize_with = "ser_f17")]
    pub alpha: f64,
    #[serde(serialize_with = "ser_f17")]
    pub kappa0: f64,
    #[serde(serialize_with = "ser_f17")]
    pub kappa: f64,
    pub origin_star: [String; 2],
    #[serde(serialize_with = "ser_f17")]
    pub t_triangulation: f64,
    #[serde(serialize_with = "ser_f17")]
    pub t_general: f64,
    #[serde(serialize_with = "ser_f17")]
    pub tolerance: f64,
}

impl ParamsJson {
    pub fn new(p: &ShapeParams) -> ParamsJson {
        ParamsJson {
            alpha: p.alpha,
            kappa0: p.kappa0,
            kappa: p.kappa,
            origin_star: point_to_value(&p.origin_star, CoordStyle::Decimal),
            t_triangulation: p.t_triangulation,
            t_general: p.t_general,
            tolerance: p.tolerance,
        }
    }
}

/// Approximate value of an exact coordinate, for display.
pub fn approx(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dgspan_core::arith::rat_frac;

    #[test]
    fn decimal_and_fraction_forms() {
        assert_eq!(format_rational(&rat_frac(5, 2), CoordStyle::Decimal), "2.5");
        assert_eq!(format_rational(&rat_frac(-1, 40), CoordStyle::Decimal), "-0.025");
        assert_eq!(format_rational(&rat_frac(1, 3), CoordStyle::Decimal), "1/3");
        assert_eq!(format_rational(&rat_frac(-7, 1), CoordStyle::Decimal), "-7");
        assert_eq!(format_rational(&rat_frac(5, 2), CoordStyle::Rational), "5/2");
    }

    #[test]
    fn parses_every_form() {
        assert_eq!(parse_rational("0.1").unwrap(), rat_frac(1, 10));
        assert_eq!(parse_rational("-2/6").unwrap(), rat_frac(-1, 3));
        assert_eq!(parse_rational("1.5e2").unwrap(), rat_frac(150, 1));
        assert_eq!(parse_rational("25E-3").unwrap(), rat_frac(1, 40));
        assert_eq!(parse_rational(".5").unwrap(), rat_frac(1, 2));
        for bad in ["", "1/0", "abc", "1.2.3", "-", "1e", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
        let v: Value = serde_json::from_str("[0.1, \"3/7\"]").unwrap();
        assert_eq!(point_from_value(&v).unwrap(), Point::new(rat_frac(1, 10), rat_frac(3, 7)));
    }

    #[test]
    fn floats_carry_17_digits() {
        assert_eq!(f17(0.1).to_string(), "1.0000000000000001e-1");
        assert_eq!(f17(2.0).to_string(), "2.0000000000000000e+0");
        assert_eq!(f17(f64::INFINITY), Value::Null);
    }

    #[test]
    fn shape_without_origin_uses_centroid() {
        let b = parse_shape(r#"{"vertices": [[1,1],[-1,1],[-1,-1],[1,-1]]}"#).unwrap();
        assert_eq!(b.origin().exact, Point::new(Rational::zero(), Rational::zero()));
        assert!(parse_shape(r#"{"vertices": [[1,1],[-1,1],[-1,-1],[1,-1]], "origin": [5, 5]}"#).is_err());
    }
}
