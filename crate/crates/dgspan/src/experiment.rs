//! Experiment runner: parameters of a body, then every check on a batch of
//! generated instances, gathered into one deterministic report.

use std::path::PathBuf;

use dgspan_core::delaunay::{oracle_edges, planarity_check, verify_witness, DelaunayGraph, OracleOptions, SiteSet};
use dgspan_core::params::{compute_params, ShapeParams};
use dgspan_core::shape::preset;
use dgspan_core::spanner::{
    diamond_check, direct_path, faces, is_triangulation, one_sided_check, stretch_from_rows, visible_pair_check,
    DirectPath,
};
use dgspan_core::{ConvexBody, Point};
use rayon::prelude::*;
use serde::Serialize;

use crate::formats::{self, f17, point_to_value, ser_f17, CoordStyle, FormatError, ParamsJson};
use crate::generators::{generate_sites, GenError, Generator, Window, DEFAULT_WINDOW};
use crate::parallel::{all_pairs, build_delaunay_par};
use crate::svg::{export_svg, Overlays};

/// Largest instance the oracle is run on.
pub const ORACLE_MAX_SITES: usize = 12;

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("shape: {0}")]
    Shape(#[from] dgspan_core::ShapeError),
    #[error("{0}")]
    Format(#[from] FormatError),
    #[error("seed {seed}: {source}")]
    Generate { seed: u64, source: GenError },
    #[error("seed {seed}: {source}")]
    Sites { seed: u64, source: dgspan_core::DelaunayError },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

fn read(path: &PathBuf) -> Result<String, ExperimentError> {
    std::fs::read_to_string(path).map_err(|source| ExperimentError::Io { path: path.clone(), source })
}

fn write(path: &PathBuf, text: &str) -> Result<(), ExperimentError> {
    std::fs::write(path, text).map_err(|source| ExperimentError::Io { path: path.clone(), source })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeSource {
    Preset(String),
    File(PathBuf),
}

impl ShapeSource {
    /// The body, with its origin moved when `origin` is given.
    pub fn load(&self, origin: Option<&Point>) -> Result<ConvexBody, ExperimentError> {
        let body = match self {
            ShapeSource::Preset(name) => preset(name)?,
            ShapeSource::File(path) => formats::parse_shape(&read(path)?)?,
        };
        Ok(match origin {
            Some(o) => body.with_origin(o)?,
            None => body,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub shape: ShapeSource,
    pub origin: Option<Point>,
    pub generator: Generator,
    /// Sites for the `file` generator.
    pub points_file: Option<PathBuf>,
    pub n: usize,
    pub seeds: Vec<u64>,
    pub window: Window,
    pub param_tol: f64,
    pub assert_tol: f64,
    /// Oracle resolution; the oracle runs on instances of at most
    /// [`ORACLE_MAX_SITES`] sites.
    pub oracle: Option<usize>,
    pub out_json: Option<PathBuf>,
    pub out_svg: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            shape: ShapeSource::Preset("square".into()),
            origin: None,
            generator: Generator::Uniform,
            points_file: None,
            n: 20,
            seeds: vec![0],
            window: DEFAULT_WINDOW,
            param_tol: 1e-3,
            assert_tol: 1e-9,
            oracle: None,
            out_json: None,
            out_svg: None,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |m: &str| Err(ExperimentError::Config(m.to_string()));
        if self.n == 0 && self.generator != Generator::File {
            return bad("n must be at least 1");
        }
        if self.seeds.is_empty() {
            return bad("no seeds");
        }
        if !(self.param_tol > 0.0 && self.assert_tol > 0.0) {
            return bad("tolerances must be positive");
        }
        if self.generator == Generator::File && self.points_file.is_none() {
            return bad("the file generator needs a points file");
        }
        if matches!(self.oracle, Some(r) if r < 64) {
            return bad("oracle resolution must be at least 64");
        }
        Ok(())
    }

    pub fn sites(&self, seed: u64) -> Result<SiteSet, ExperimentError> {
        match (&self.generator, &self.points_file) {
            (Generator::File, Some(path)) => Ok(formats::parse_sites(&read(path)?)?),
            (g, _) => generate_sites(*g, self.n, seed, self.window).map_err(|source| ExperimentError::Generate { seed, source }),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub shape: ShapeSource,
    pub origin: Option<[String; 2]>,
    pub generator: Generator,
    pub points_file: Option<PathBuf>,
    pub n: usize,
    pub seeds: Vec<u64>,
    pub window: [serde_json::Value; 4],
    #[serde(serialize_with = "ser_f17")]
    pub param_tol: f64,
    #[serde(serialize_with = "ser_f17")]
    pub assert_tol: f64,
    pub oracle: Option<usize>,
}

impl ConfigEcho {
    fn new(c: &ExperimentConfig) -> ConfigEcho {
        ConfigEcho {
            shape: c.shape.clone(),
            origin: c.origin.as_ref().map(|o| point_to_value(o, CoordStyle::Decimal)),
            generator: c.generator,
            points_file: c.points_file.clone(),
            n: c.n,
            seeds: c.seeds.clone(),
            window: c.window.map(f17),
            param_tol: c.param_tol,
            assert_tol: c.assert_tol,
            oracle: c.oracle,
        }
    }
}

/// Evidence for a failed check: the sites involved and their coordinates.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub check: &'static str,
    pub sites: Vec<usize>,
    pub coordinates: Vec<[String; 2]>,
    pub value: serde_json::Value,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct DirectPathSummary {
    pub pairs: usize,
    pub nonedge_steps: usize,
    pub one_sided: usize,
    pub one_sided_violations: usize,
    #[serde(serialize_with = "ser_f17")]
    pub worst_one_sided_ratio: f64,
    /// One-sided paths whose first homothet does not have `p` as its
    /// leftmost point on `pq`.
    pub left_end_failures: usize,
    pub monotone_failures: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct StretchSummary {
    #[serde(serialize_with = "ser_f17")]
    pub max_stretch: f64,
    pub pair: [usize; 2],
    #[serde(serialize_with = "ser_f17")]
    pub bound: f64,
    pub within_bound: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleDiff {
    pub resolution: usize,
    pub missing: Vec<[usize; 2]>,
    pub extra: Vec<[usize; 2]>,
}

/// Every check on one instance.
#[derive(Debug, Clone, Serialize)]
pub struct InstanceReport {
    pub n: usize,
    pub edges: usize,
    pub connected: bool,
    pub is_triangulation: Option<bool>,
    pub planarity_violations: usize,
    pub witness_failures: usize,
    #[serde(serialize_with = "ser_f17")]
    pub diamond_alpha: f64,
    pub diamond_violations: usize,
    pub direct_paths: DirectPathSummary,
    pub faces: Option<usize>,
    pub euler_ok: bool,
    pub visible_pairs: usize,
    pub visible_violations: usize,
    #[serde(serialize_with = "ser_f17")]
    pub worst_visible_ratio: f64,
    pub stretch: Option<StretchSummary>,
    pub oracle: Option<OracleDiff>,
    pub passed: bool,
    pub certificates: Vec<Certificate>,
}

fn cert(g: &DelaunayGraph, check: &'static str, sites: Vec<usize>, value: serde_json::Value) -> Certificate {
    let coordinates = sites.iter().map(|&i| point_to_value(&g.sites.point(i).exact, CoordStyle::Decimal)).collect();
    Certificate { check, sites, coordinates, value }
}

/// Run every check on `g`. Direct paths use the body re-centred at the
/// parameter origin; everything else is independent of the origin.
pub fn analyze(body: &ConvexBody, params: &ShapeParams, g: &DelaunayGraph, assert_tol: f64, oracle: Option<usize>) -> InstanceReport {
    let sites = &g.sites;
    let n = sites.len();
    let mut certs = Vec::new();

    let planarity_violations = match planarity_check(g) {
        Ok(()) => 0,
        Err(v) => {
            certs.push(cert(g, "planarity", vec![v.e1.0, v.e1.1, v.e2.0, v.e2.1], serde_json::Value::Null));
            1
        }
    };
    let mut witness_failures = 0;
    for (&e, w) in &g.witnesses {
        if !verify_witness(body, sites, e, w) {
            witness_failures += 1;
            certs.push(cert(g, "witness", vec![e.0, e.1], serde_json::Value::Null));
        }
    }
    let diamond_alpha = params.alpha - params.tolerance;
    let diamonds = diamond_check(g, diamond_alpha);
    for &(a, b) in &diamonds.violations {
        certs.push(cert(g, "diamond", vec![a, b], f17(diamond_alpha)));
    }

    let ob = body.with_origin(&params.origin_star).expect("parameter origin is interior");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q))).collect();
    let paths: Vec<DirectPath> = pairs.par_iter().map(|&(p, q)| direct_path(&ob, sites, g, p, q)).collect();
    let mut dp = DirectPathSummary { pairs: paths.len(), ..Default::default() };
    for path in &paths {
        let (p, q) = (path.vertices[0], *path.vertices.last().expect("nonempty"));
        if path.vertices.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
            dp.nonedge_steps += 1;
            certs.push(cert(g, "direct-path-step", path.vertices.clone(), serde_json::Value::Null));
        }
        if !path.monotone(assert_tol) {
            dp.monotone_failures += 1;
            certs.push(cert(g, "direct-path-monotone", path.vertices.clone(), serde_json::Value::Null));
        }
        if path.one_sided {
            dp.one_sided += 1;
            let (a, b) = (sites.point(p).f, sites.point(q).f);
            let ratio = path.length / (a[0] - b[0]).hypot(a[1] - b[1]);
            dp.worst_one_sided_ratio = dp.worst_one_sided_ratio.max(ratio);
            if !one_sided_check(path, sites, params.kappa) {
                dp.one_sided_violations += 1;
                certs.push(cert(g, "one-sided", path.vertices.clone(), f17(ratio)));
            }
            if path.left_ends.first().is_some_and(|l| l.abs() > assert_tol) {
                dp.left_end_failures += 1;
                certs.push(cert(g, "left-end", vec![p, q], f17(path.left_ends[0])));
            }
        }
    }

    let connected = g.is_connected();
    if !connected {
        certs.push(cert(g, "connected", vec![], serde_json::Value::Null));
    }
    let fs = if planarity_violations == 0 { faces(g).ok() } else { None };
    let is_tri = is_triangulation(g).ok();
    let euler_ok = fs.as_ref().is_some_and(|f| n + f.face_count() == g.edges.len() + 1 + f.components);
    let (mut visible_pairs, mut visible_violations, mut worst_visible_ratio) = (0, 0, 0.0);
    let mut stretch = None;
    if connected && n > 1 {
        let rows = all_pairs(g);
        if let Some(fs) = &fs {
            let v = visible_pair_check(g, fs, &rows, params.kappa);
            visible_pairs = v.pairs_checked;
            visible_violations = v.violations.len();
            worst_visible_ratio = v.worst_ratio;
            for x in &v.violations {
                certs.push(cert(g, "visible-pair", vec![x.p, x.q], f17(x.ratio)));
            }
        }
        if let Ok(r) = stretch_from_rows(g, &rows, params) {
            let within_bound = r.within_bound(assert_tol);
            if !within_bound {
                certs.push(cert(g, "stretch", vec![r.arg_pair.0, r.arg_pair.1], f17(r.max_stretch)));
            }
            stretch = Some(StretchSummary {
                max_stretch: r.max_stretch,
                pair: [r.arg_pair.0, r.arg_pair.1],
                bound: r.bound_used,
                within_bound,
            });
        }
    }

    let oracle = oracle.filter(|_| n <= ORACLE_MAX_SITES).map(|resolution| {
        let opts = OracleOptions { resolution, ..OracleOptions::default() };
        let rep = oracle_edges(body, sites, &opts).expect("resolution checked");
        let mine: std::collections::BTreeSet<(usize, usize)> = g.edges.iter().copied().collect();
        let missing: Vec<[usize; 2]> = rep.edges.difference(&mine).map(|&(a, b)| [a, b]).collect();
        let extra: Vec<[usize; 2]> = mine.difference(&rep.edges).map(|&(a, b)| [a, b]).collect();
        for e in missing.iter().chain(&extra) {
            certs.push(cert(g, "oracle", e.to_vec(), serde_json::Value::Null));
        }
        OracleDiff { resolution, missing, extra }
    });

    let passed = planarity_violations == 0
        && witness_failures == 0
        && diamonds.violations.is_empty()
        && dp.nonedge_steps == 0
        && dp.one_sided_violations == 0
        && dp.left_end_failures == 0
        && dp.monotone_failures == 0
        && (n == 0 || connected)
        && euler_ok
        && visible_violations == 0
        && (n < 2 || stretch.as_ref().is_some_and(|s| s.within_bound))
        && oracle.as_ref().is_none_or(|o| o.missing.is_empty() && o.extra.is_empty());
    InstanceReport {
        n,
        edges: g.edges.len(),
        connected,
        is_triangulation: is_tri,
        planarity_violations,
        witness_failures,
        diamond_alpha,
        diamond_violations: diamonds.violations.len(),
        direct_paths: dp,
        faces: fs.as_ref().map(|f| f.face_count()),
        euler_ok,
        visible_pairs,
        visible_violations,
        worst_visible_ratio,
        stretch,
        oracle,
        passed,
        certificates: certs,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SeedEntry {
    pub seed: u64,
    #[serde(flatten)]
    pub report: InstanceReport,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Aggregate {
    pub instances: usize,
    pub failed: Vec<u64>,
    #[serde(serialize_with = "ser_f17")]
    pub max_stretch: f64,
    #[serde(serialize_with = "ser_f17")]
    pub worst_stretch_over_bound: f64,
    #[serde(serialize_with = "ser_f17")]
    pub worst_one_sided_ratio: f64,
    #[serde(serialize_with = "ser_f17")]
    pub worst_visible_ratio: f64,
    pub planarity_violations: usize,
    pub witness_failures: usize,
    pub diamond_violations: usize,
    pub one_sided_violations: usize,
    pub visible_violations: usize,
    pub oracle_mismatches: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub config: ConfigEcho,
    pub params: ParamsJson,
    pub instances: Vec<SeedEntry>,
    pub aggregate: Aggregate,
    pub passed: bool,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        formats::to_json(self)
    }
}

fn aggregate(entries: &[SeedEntry]) -> Aggregate {
    let mut a = Aggregate { instances: entries.len(), ..Default::default() };
    for e in entries {
        let r = &e.report;
        if !r.passed {
            a.failed.push(e.seed);
        }
        if let Some(s) = &r.stretch {
            a.max_stretch = a.max_stretch.max(s.max_stretch);
            a.worst_stretch_over_bound = a.worst_stretch_over_bound.max(s.max_stretch / s.bound);
        }
        a.worst_one_sided_ratio = a.worst_one_sided_ratio.max(r.direct_paths.worst_one_sided_ratio);
        a.worst_visible_ratio = a.worst_visible_ratio.max(r.worst_visible_ratio);
        a.planarity_violations += r.planarity_violations;
        a.witness_failures += r.witness_failures;
        a.diamond_violations += r.diamond_violations;
        a.one_sided_violations += r.direct_paths.one_sided_violations;
        a.visible_violations += r.visible_violations;
        a.oracle_mismatches += r.oracle.as_ref().map_or(0, |o| o.missing.len() + o.extra.len());
    }
    a
}

/// Parameters once, then every seed; seeds run concurrently and are
/// reported in the order given. Writes the JSON report and a picture of
/// the first instance when output paths are set.
pub fn run(config: &ExperimentConfig) -> Result<RunReport, ExperimentError> {
    config.validate()?;
    let body = config.shape.load(config.origin.as_ref())?;
    let params = compute_params(&body, config.param_tol);
    let graphs: Vec<(u64, DelaunayGraph)> = config
        .seeds
        .par_iter()
        .map(|&seed| Ok((seed, build_delaunay_par(&body, &config.sites(seed)?))))
        .collect::<Result<_, ExperimentError>>()?;
    let instances: Vec<SeedEntry> = graphs
        .par_iter()
        .map(|(seed, g)| SeedEntry { seed: *seed, report: analyze(&body, &params, g, config.assert_tol, config.oracle) })
        .collect();
    let aggregate = aggregate(&instances);
    let report = RunReport {
        config: ConfigEcho::new(config),
        params: ParamsJson::new(&params),
        passed: aggregate.failed.is_empty(),
        instances,
        aggregate,
    };
    if let Some(path) = &config.out_json {
        write(path, &report.to_json())?;
    }
    if let Some(path) = &config.out_svg {
        let g = &graphs[0].1;
        let diamonds = diamond_check(g, params.alpha - params.tolerance);
        let ov = Overlays { witnesses: true, diamonds: Some(&diamonds), ..Default::default() };
        export_svg(&body, g, &ov, path).map_err(|source| ExperimentError::Io { path: path.clone(), source })?;
    }
    Ok(report)
}
