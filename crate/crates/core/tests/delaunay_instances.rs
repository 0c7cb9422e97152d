use std::collections::BTreeSet;

use dgspan_core::arith::{rat_frac, rat_int};
use dgspan_core::delaunay::{
    build_delaunay, default_window, oracle_edges, oracle_window, planarity_check, sampled_voronoi_oracle,
    star_shape_violations, verify_witness, DelaunayGraph, OracleOptions, SiteSet,
};
use dgspan_core::shape::preset;
use dgspan_core::{ConvexBody, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SHAPES: [&str; 5] = ["square", "equilateral-triangle", "regular-5", "random-convex-7", "regular-64"];

/// Distinct sites on the integer grid `[0, side]^2`; small sides force
/// collinear and cocircular configurations.
fn sites(n: usize, side: i64, seed: u64) -> SiteSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    while seen.len() < n {
        seen.insert((rng.random_range(0..=side), rng.random_range(0..=side)));
    }
    SiteSet::new(seen.into_iter().map(|(x, y)| Point::new(rat_int(x), rat_int(y))).collect()).unwrap()
}

fn edge_set(g: &DelaunayGraph) -> BTreeSet<(usize, usize)> {
    g.edges.iter().copied().collect()
}

/// Halfway between the origin and the first vertex.
fn other_origin(b: &ConvexBody) -> Point {
    b.origin().exact.mid(&b.vertices()[0].exact)
}

#[test]
fn random_instances_are_plane_and_certified() {
    for (k, shape) in SHAPES.iter().enumerate() {
        let body = preset(shape).unwrap();
        for seed in 0..12 {
            let side = if seed % 2 == 0 { 12 } else { 1000 };
            let s = sites(10, side, 100 * k as u64 + seed);
            let g = build_delaunay(&body, &s);
            assert_eq!(planarity_check(&g), Ok(()), "{shape} seed {seed}");
            assert!(g.sites_on_edges().is_empty(), "{shape} seed {seed}");
            assert!(g.is_connected(), "{shape} seed {seed}");
            assert_eq!(g.witnesses.len(), g.edges.len());
            for (&e, h) in &g.witnesses {
                assert!(verify_witness(&body, &s, e, h), "{shape} seed {seed} edge {e:?}");
            }
            for (i, adj) in g.adjacency.iter().enumerate() {
                for &j in adj {
                    assert!(g.has_edge(i, j) && g.has_edge(j, i));
                }
            }
        }
    }
}

#[test]
fn edges_do_not_depend_on_the_origin() {
    for (k, shape) in SHAPES.iter().enumerate() {
        let body = preset(shape).unwrap();
        let moved = body.with_origin(&other_origin(&body)).unwrap();
        for seed in 0..8 {
            let s = sites(9, 20, 7 + 31 * k as u64 + seed);
            assert_eq!(build_delaunay(&body, &s).edges, build_delaunay(&moved, &s).edges, "{shape} seed {seed}");
        }
    }
}

#[test]
fn edges_follow_translation_and_scaling_of_the_sites() {
    let body = preset("random-convex-7").unwrap();
    for seed in 0..6 {
        let s = sites(9, 50, seed);
        let shift = Point::new(rat_frac(-17, 3), rat_frac(5, 7));
        let l = rat_frac(7, 2);
        let moved = SiteSet::new(s.points().iter().map(|p| p.exact.scale(&l).add(&shift)).collect()).unwrap();
        assert_eq!(build_delaunay(&body, &s).edges, build_delaunay(&body, &moved).edges);
    }
}

#[test]
fn oracle_on_two_and_three_sites() {
    let body = preset("square").unwrap();
    let two = SiteSet::from_f64(&[[0.0, 0.0], [3.0, 1.0]]).unwrap();
    let opts = OracleOptions { resolution: 512, ..OracleOptions::default() };
    assert_eq!(oracle_edges(&body, &two, &opts).unwrap().edges, BTreeSet::from([(0, 1)]));
    let three = SiteSet::from_f64(&[[0.0, 0.0], [10.0, 1.0], [4.0, 8.0]]).unwrap();
    let want = BTreeSet::from([(0, 1), (0, 2), (1, 2)]);
    assert_eq!(oracle_edges(&body, &three, &opts).unwrap().edges, want);
    assert_eq!(edge_set(&build_delaunay(&body, &three)), want);
}

#[test]
fn oracle_agrees_on_small_random_instances() {
    for (k, shape) in SHAPES.iter().enumerate() {
        let body = preset(shape).unwrap();
        for seed in 0..3 {
            let s = sites(7, 30, 1000 + 10 * k as u64 + seed);
            let oracle = oracle_edges(&body, &s, &OracleOptions::default()).unwrap();
            assert_eq!(oracle.edges, edge_set(&build_delaunay(&body, &s)), "{shape} seed {seed}");
        }
    }
}

#[test]
fn plain_oracle_threshold_separates_contacts_from_edges() {
    let body = preset("square").unwrap();
    let res = 512;
    let mut kept = 0;
    let mut total = 0;
    for seed in 0..50 {
        let mut rng = ChaCha8Rng::seed_from_u64(5000 + seed);
        let pts: Vec<[f64; 2]> = (0..8).map(|_| [rng.random_range(0.0..100.0), rng.random_range(0.0..100.0)]).collect();
        let s = SiteSet::from_f64(&pts).unwrap();
        let truth = edge_set(&build_delaunay(&body, &s));
        let found = sampled_voronoi_oracle(&body, &s, res, default_window(&s)).unwrap();
        assert!(found.is_subset(&truth), "seed {seed}: {:?}", found.difference(&truth).collect::<Vec<_>>());
        kept += found.len();
        total += truth.len();
    }
    assert!(kept * 10 >= total * 9, "kept {kept} of {total}");
}

#[test]
fn cells_are_star_shaped_on_the_grid() {
    for shape in ["square", "equilateral-triangle", "regular-64"] {
        let body = preset(shape).unwrap();
        let s = sites(8, 100, 77);
        let grid = oracle_window(&body, &s, default_window(&s), 128);
        assert!(star_shape_violations(&s, &grid, 3).is_empty(), "{shape}");
    }
}

#[test]
fn injected_crossing_edge_is_reported() {
    let body = preset("square").unwrap();
    let s = sites(12, 100, 3);
    let mut g = build_delaunay(&body, &s);
    let missing = (0..s.len())
        .flat_map(|i| (i + 1..s.len()).map(move |j| (i, j)))
        .find(|&(i, j)| !g.has_edge(i, j) && crosses_some_edge(&g, i, j))
        .expect("a non-edge crossing the graph");
    g.edges.push(missing);
    g.edges.sort_unstable();
    let v = planarity_check(&g).unwrap_err();
    assert!(v.e1 == missing || v.e2 == missing, "{v:?}");
}

fn crosses_some_edge(g: &DelaunayGraph, i: usize, j: usize) -> bool {
    use dgspan_core::point::{segment_contact_x, SegmentContact};
    g.edges.iter().any(|&(a, b)| {
        ![a, b].contains(&i)
            && ![a, b].contains(&j)
            && segment_contact_x(g.sites.point(i), g.sites.point(j), g.sites.point(a), g.sites.point(b))
                != SegmentContact::Disjoint
    })
}

#[test]
fn inflated_witness_is_rejected() {
    let body = preset("regular-5").unwrap();
    let s = sites(40, 100, 11);
    let g = build_delaunay(&body, &s);
    let two = rat_int(2);
    assert!(!g.witnesses.is_empty());
    for (&e, h) in &g.witnesses {
        let mut big = h.clone();
        big.scale = big.scale * &two;
        assert!(!verify_witness(&body, &s, e, &big), "edge {e:?}");
    }
}
