use std::f64::consts::FRAC_PI_2;

use dgspan_core::delaunay::{build_delaunay, DelaunayGraph, SiteSet};
use dgspan_core::params::{compute_params, ShapeParams};
use dgspan_core::shape::preset;
use dgspan_core::spanner::{
    diamond_check, direct_path, euclidean_stretch, faces, one_sided_check, single_source, visible_pair_check,
    DirectPath,
};
use dgspan_core::ConvexBody;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SHAPES: [&str; 5] = ["square", "equilateral-triangle", "regular-5", "random-convex-7", "regular-64"];

fn uniform(n: usize, seed: u64) -> SiteSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<[f64; 2]> = (0..n).map(|_| [rng.random_range(0.0..100.0), rng.random_range(0.0..100.0)]).collect();
    SiteSet::from_f64(&pts).unwrap()
}

fn setup(shape: &str) -> (ConvexBody, ShapeParams) {
    let body = preset(shape).unwrap();
    let params = compute_params(&body, 1e-3);
    let star = body.with_origin(&params.origin_star).unwrap();
    (star, params)
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn check_path_shape(g: &DelaunayGraph, d: &DirectPath, p: usize, q: usize) {
    assert_eq!(d.vertices.first(), Some(&p));
    assert_eq!(d.vertices.last(), Some(&q));
    let mut seen = d.vertices.clone();
    seen.sort_unstable();
    seen.dedup();
    assert_eq!(seen.len(), d.vertices.len(), "repeated vertex in {:?}", d.vertices);
    assert!(d.vertices.windows(2).all(|w| g.has_edge(w[0], w[1])));
    assert_eq!(d.crossing_params.len(), d.vertices.len() - 1);
    assert!(d.crossing_params.iter().all(|&s| (0.0..=1.0).contains(&s)));
    assert!(d.monotone(1e-9), "{d:?}");
    let (a, b) = (g.sites.point(p).f, g.sites.point(q).f);
    for x in &d.crossing_points {
        let cross = (b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0]);
        assert!(cross.abs() <= 1e-9 * dist(a, b).powi(2));
    }
    let len: f64 = d.vertices.windows(2).map(|w| dist(g.sites.point(w[0]).f, g.sites.point(w[1]).f)).sum();
    assert!((len - d.length).abs() <= 1e-9 * len);
}

/// Nearest-site labels along `pq`, pushed slightly to its left, compared
/// with the cell changes recorded by the trace.
fn check_against_labels(body: &ConvexBody, s: &SiteSet, d: &DirectPath) {
    let (p, q) = (d.vertices[0], *d.vertices.last().unwrap());
    let (a, b) = (s.point(p).f, s.point(q).f);
    let len = dist(a, b);
    let nudge = [-(b[1] - a[1]) / len * 1e-7, (b[0] - a[0]) / len * 1e-7];
    let changes: Vec<f64> = d.cells.iter().skip(1).map(|c| c.1).collect();
    let samples = 2000;
    for k in 1..samples {
        let t = k as f64 / samples as f64;
        if changes.iter().any(|&c| (c - t).abs() < 1e-5) {
            continue;
        }
        let x = [a[0] + t * (b[0] - a[0]) + nudge[0], a[1] + t * (b[1] - a[1]) + nudge[1]];
        let label = (0..s.len())
            .min_by(|&i, &j| body.distance_f64(x, s.point(i).f).total_cmp(&body.distance_f64(x, s.point(j).f)))
            .unwrap();
        let cell = d.cells.iter().rev().find(|c| c.1 <= t).map_or(p, |c| c.0);
        assert_eq!(label, cell, "pair ({p}, {q}) at s = {t}: cells {:?}", d.cells);
    }
}

#[test]
fn three_site_path_matches_labels() {
    let body = preset("square").unwrap();
    let s = SiteSet::from_f64(&[[0.0, 0.0], [10.0, 0.0], [5.0, 1.0]]).unwrap();
    let g = build_delaunay(&body, &s);
    let d = direct_path(&body, &s, &g, 0, 1);
    assert_eq!(d.vertices, [0, 2, 1]);
    assert_eq!(d.crossing_points.len(), 2);
    check_against_labels(&body, &s, &d);
}

#[test]
fn direct_paths_on_random_instances() {
    for (k, shape) in SHAPES.iter().enumerate() {
        let body = preset(shape).unwrap();
        for seed in 0..3 {
            let s = uniform(14, 40 * k as u64 + seed);
            let g = build_delaunay(&body, &s);
            for p in 0..s.len() {
                for q in 0..s.len() {
                    if p == q {
                        continue;
                    }
                    let d = direct_path(&body, &s, &g, p, q);
                    check_path_shape(&g, &d, p, q);
                    if (p + q + seed as usize) % 7 == 0 {
                        check_against_labels(&body, &s, &d);
                    }
                }
            }
        }
    }
}

#[test]
fn one_sided_paths_respect_kappa() {
    let mut checked = 0;
    for (k, shape) in SHAPES.iter().enumerate() {
        let (body, params) = setup(shape);
        let mut seed = 0;
        while checked < 200 * (k + 1) {
            let s = uniform(20, 900 + 50 * k as u64 + seed);
            seed += 1;
            let g = build_delaunay(&body, &s);
            for p in 0..s.len() {
                for q in 0..s.len() {
                    if p == q {
                        continue;
                    }
                    let d = direct_path(&body, &s, &g, p, q);
                    if d.one_sided && d.vertices.len() > 2 {
                        assert!(one_sided_check(&d, &s, params.kappa), "{shape}: {d:?}");
                        let mut inflated = d.clone();
                        inflated.length = params.kappa * dist(s.point(p).f, s.point(q).f) * 1.01;
                        assert!(!one_sided_check(&inflated, &s, params.kappa));
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked >= 1000);
}

#[test]
fn collinear_sites_have_stretch_one() {
    let pts: Vec<[f64; 2]> = (0..9).map(|i| [3.0 * i as f64, 2.0 * i as f64]).collect();
    let s = SiteSet::from_f64(&pts).unwrap();
    for shape in SHAPES {
        let (body, params) = setup(shape);
        let g = build_delaunay(&body, &s);
        assert_eq!(g.edges.len(), 8, "{shape}");
        let r = euclidean_stretch(&g, &params).unwrap();
        assert!((r.max_stretch - 1.0).abs() < 1e-12);
        assert!(!r.is_triangulation);
    }
}

#[test]
fn square_graphs_are_sqrt_ten_spanners() {
    let (body, params) = setup("square");
    for seed in 0..50 {
        let g = build_delaunay(&body, &uniform(30, 300 + seed));
        let r = euclidean_stretch(&g, &params).unwrap();
        assert!(r.max_stretch >= 1.0);
        assert!(r.max_stretch <= 10f64.sqrt() * (1.0 + 1e-9), "seed {seed}: {}", r.max_stretch);
        assert!(r.within_bound(1e-9));
    }
}

#[test]
fn diamond_property_and_its_teeth() {
    let mut teeth = 0;
    for (k, shape) in SHAPES.iter().enumerate() {
        let (body, params) = setup(shape);
        for seed in 0..8 {
            let g = build_delaunay(&body, &uniform(25, 500 + 10 * k as u64 + seed));
            let r = diamond_check(&g, params.alpha - params.tolerance);
            assert!(r.holds(), "{shape} seed {seed}: {:?}", r.violations);
            teeth += diamond_check(&g, FRAC_PI_2 - 0.01).violations.len();
        }
    }
    assert!(teeth > 0);
}

#[test]
fn euler_relation_on_random_instances() {
    for i in 0..200u64 {
        let shape = SHAPES[i as usize % SHAPES.len()];
        let body = preset(shape).unwrap();
        let g = build_delaunay(&body, &uniform(3 + (i as usize % 10), 2000 + i));
        assert!(g.is_connected());
        let fs = faces(&g).unwrap();
        assert_eq!(fs.components, 1);
        assert_eq!(g.len() + fs.face_count(), g.edges.len() + 2, "{shape} instance {i}");
    }
}

#[test]
fn visible_pairs_respect_kappa() {
    for (k, shape) in SHAPES.iter().enumerate() {
        let (body, params) = setup(shape);
        for seed in 0..6 {
            let g = build_delaunay(&body, &uniform(25, 700 + 10 * k as u64 + seed));
            let fs = faces(&g).unwrap();
            let rows: Vec<Vec<f64>> = (0..g.len()).map(|i| single_source(&g, i)).collect();
            let r = visible_pair_check(&g, &fs, &rows, params.kappa);
            assert!(r.holds(), "{shape} seed {seed}: {:?}", r.violations);
        }
    }
}
