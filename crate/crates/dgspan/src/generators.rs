//! Deterministic site generators.

use std::fmt;
use std::str::FromStr;

use dgspan_core::arith::{rat, rat_frac, snap};
use dgspan_core::delaunay::SiteSet;
use dgspan_core::{Point, Rational};
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

/// Coordinates of random generators are multiples of `2^-SNAP`.
pub const SNAP: i32 = 16;

/// `[x_min, y_min, x_max, y_max]`.
pub type Window = [f64; 4];

pub const DEFAULT_WINDOW: Window = [0.0, 0.0, 100.0, 100.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    Uniform,
    Grid,
    Collinear,
    Cocircular,
    Clustered,
    File,
}

impl Generator {
    pub const RANDOM: [Generator; 5] =
        [Generator::Uniform, Generator::Grid, Generator::Collinear, Generator::Cocircular, Generator::Clustered];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Uniform => "uniform",
            Generator::Grid => "grid",
            Generator::Collinear => "collinear",
            Generator::Cocircular => "cocircular",
            Generator::Clustered => "clustered",
            Generator::File => "file",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = GenError;
    fn from_str(s: &str) -> Result<Self, GenError> {
        Ok(match s {
            "uniform" => Generator::Uniform,
            "grid" => Generator::Grid,
            "collinear" => Generator::Collinear,
            "cocircular" => Generator::Cocircular,
            "clustered" => Generator::Clustered,
            "file" => Generator::File,
            _ => return Err(GenError::UnknownGenerator(s.to_string())),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("cannot place {n} distinct sites with generator {generator} in the window")]
    DuplicatePointsUnavoidable { generator: Generator, n: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("the file generator reads sites from a points file")]
    NeedsFile,
    #[error("window must have positive width and height")]
    BadWindow,
}

fn rng_for(generator: Generator, seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(generator as u64);
    rng
}

fn grid_cells(w: &Window) -> (f64, f64) {
    let s = (2.0f64).powi(SNAP);
    ((w[2] - w[0]) * s + 1.0, (w[3] - w[1]) * s + 1.0)
}

fn uniform_point(rng: &mut ChaCha8Rng, w: &Window) -> [f64; 2] {
    let x = snap(w[0] + rng.random::<f64>() * (w[2] - w[0]), SNAP).clamp(w[0], w[2]);
    let y = snap(w[1] + rng.random::<f64>() * (w[3] - w[1]), SNAP).clamp(w[1], w[3]);
    [x, y]
}

/// Draw distinct points, redrawing duplicates.
fn distinct(n: usize, generator: Generator, mut draw: impl FnMut() -> Point) -> Result<Vec<Point>, GenError> {
    let mut out: Vec<Point> = Vec::with_capacity(n);
    let mut misses = 0;
    while out.len() < n {
        let p = draw();
        if out.contains(&p) {
            misses += 1;
            if misses > 1000 + 100 * n {
                return Err(GenError::DuplicatePointsUnavoidable { generator, n });
            }
            continue;
        }
        out.push(p);
    }
    Ok(out)
}

/// `n` sites from `generator` with `seed` inside `window`. Identical inputs
/// give identical sites.
pub fn generate_points(generator: Generator, n: usize, seed: u64, window: Window) -> Result<Vec<Point>, GenError> {
    let w = window;
    if !(w[2] > w[0] && w[3] > w[1]) {
        return Err(GenError::BadWindow);
    }
    let mut rng = rng_for(generator, seed);
    let too_many = GenError::DuplicatePointsUnavoidable { generator, n };
    match generator {
        Generator::File => Err(GenError::NeedsFile),
        Generator::Uniform => {
            let (cx, cy) = grid_cells(&w);
            if n as f64 > cx * cy {
                return Err(too_many);
            }
            distinct(n, generator, || {
                let p = uniform_point(&mut rng, &w);
                Point::from_f64(p[0], p[1])
            })
        }
        Generator::Grid => {
            let k = (n as f64).sqrt().ceil().max(1.0) as usize;
            if (w[2] - w[0]).min(w[3] - w[1]) / (k as f64) < (2.0f64).powi(-SNAP) {
                return Err(too_many);
            }
            let mut cells: Vec<usize> = (0..k * k).collect();
            if n < k * k {
                cells.shuffle(&mut rng);
                cells.truncate(n);
                cells.sort_unstable();
            }
            let (x0, y0) = (rat(w[0]), rat(w[1]));
            let (dx, dy) = (rat(w[2] - w[0]), rat(w[3] - w[1]));
            let kk = (2 * k) as i64;
            Ok(cells
                .into_iter()
                .map(|c| {
                    let (i, j) = ((c % k) as i64, (c / k) as i64);
                    Point::new(
                        &x0 + &dx * rat_frac(2 * i + 1, kk),
                        &y0 + &dy * rat_frac(2 * j + 1, kk),
                    )
                })
                .collect())
        }
        Generator::Collinear => {
            const STEPS: i64 = 1024;
            if n as i64 > STEPS + 1 {
                return Err(too_many);
            }
            let (a, b) = loop {
                let (a, b) = (uniform_point(&mut rng, &w), uniform_point(&mut rng, &w));
                if (a[0] - b[0]).hypot(a[1] - b[1]) > 0.25 * (w[2] - w[0]).min(w[3] - w[1]) {
                    break (Point::from_f64(a[0], a[1]), Point::from_f64(b[0], b[1]));
                }
            };
            let d = b.sub(&a);
            distinct(n, generator, || a.along(&d, &rat_frac(rng.random_range(0..=STEPS), STEPS)))
        }
        Generator::Cocircular => {
            // Rational points of a circle: c + r ((1 - u^2), 2u) / (1 + u^2).
            let side = (w[2] - w[0]).min(w[3] - w[1]);
            let r = rat(snap(side * (0.2 + 0.25 * rng.random::<f64>()), 8));
            let mid = [(w[0] + w[2]) / 2.0, (w[1] + w[3]) / 2.0];
            let slack = side * 0.05;
            let c = Point::from_f64(
                snap(mid[0] + slack * (2.0 * rng.random::<f64>() - 1.0), SNAP),
                snap(mid[1] + slack * (2.0 * rng.random::<f64>() - 1.0), SNAP),
            );
            distinct(n, generator, || {
                let th = (rng.random::<f64>() - 0.5) * 0.98 * std::f64::consts::TAU;
                let u: Rational = rat(snap((th / 2.0).tan(), 10));
                let uu = &u * &u;
                let den = Rational::one() + &uu;
                let x = (Rational::one() - &uu) / &den;
                let y = (&u + &u) / &den;
                Point::new(&c.x + &r * x, &c.y + &r * y)
            })
        }
        Generator::Clustered => {
            let (cx, cy) = grid_cells(&w);
            if n as f64 > cx * cy {
                return Err(too_many);
            }
            let k = (n / 5).max(1);
            let centres: Vec<[f64; 2]> = (0..k).map(|_| uniform_point(&mut rng, &w)).collect();
            let sigma = 0.03 * (w[2] - w[0]).min(w[3] - w[1]);
            let normal = Normal::new(0.0, sigma).expect("positive spread");
            distinct(n, generator, || {
                let c = centres[rng.random_range(0..k)];
                let x = snap((c[0] + normal.sample(&mut rng)).clamp(w[0], w[2]), SNAP);
                let y = snap((c[1] + normal.sample(&mut rng)).clamp(w[1], w[3]), SNAP);
                Point::from_f64(x, y)
            })
        }
    }
}

/// [`generate_points`] wrapped as a site set.
pub fn generate_sites(generator: Generator, n: usize, seed: u64, window: Window) -> Result<SiteSet, GenError> {
    let pts = generate_points(generator, n, seed, window)?;
    Ok(SiteSet::new(pts).expect("generators produce distinct points"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use dgspan_core::point::orient;
    use std::cmp::Ordering;

    #[test]
    fn grid_of_nine_is_a_lattice() {
        let p = generate_points(Generator::Grid, 9, 3, [0.0, 0.0, 1.0, 1.0]).unwrap();
        let want: Vec<Point> = (0..9)
            .map(|c| Point::new(rat_frac(2 * (c % 3) + 1, 6), rat_frac(2 * (c / 3) + 1, 6)))
            .collect();
        assert_eq!(p, want);
    }

    #[test]
    fn collinear_is_exact() {
        let p = generate_points(Generator::Collinear, 5, 7, DEFAULT_WINDOW).unwrap();
        assert_eq!(p.len(), 5);
        for k in 2..5 {
            assert_eq!(orient(&p[0], &p[1], &p[k]), Ok(Ordering::Equal));
        }
    }

    #[test]
    fn cocircular_points_share_a_circle() {
        let p = generate_points(Generator::Cocircular, 8, 1, DEFAULT_WINDOW).unwrap();
        // Equal power with respect to the circle through the first three.
        let lift = |q: &Point| q.dot(q);
        let det = |a: &Point, b: &Point, c: &Point, d: &Point| {
            let rows: Vec<[Rational; 3]> = [a, b, c]
                .iter()
                .map(|x| [&x.x - &d.x, &x.y - &d.y, lift(x) - lift(d)])
                .collect();
            &rows[0][0] * (&rows[1][1] * &rows[2][2] - &rows[1][2] * &rows[2][1])
                - &rows[0][1] * (&rows[1][0] * &rows[2][2] - &rows[1][2] * &rows[2][0])
                + &rows[0][2] * (&rows[1][0] * &rows[2][1] - &rows[1][1] * &rows[2][0])
        };
        for k in 3..8 {
            assert_eq!(det(&p[0], &p[1], &p[2], &p[k]), rat(0.0));
        }
    }

    #[test]
    fn deterministic_and_distinct() {
        for g in Generator::RANDOM {
            let a = generate_points(g, 40, 11, DEFAULT_WINDOW).unwrap();
            assert_eq!(a, generate_points(g, 40, 11, DEFAULT_WINDOW).unwrap());
            assert!(SiteSet::new(a).is_ok());
        }
    }

    #[test]
    fn too_many_collinear_sites() {
        assert!(matches!(
            generate_points(Generator::Collinear, 2000, 0, DEFAULT_WINDOW),
            Err(GenError::DuplicatePointsUnavoidable { .. })
        ));
    }
}
