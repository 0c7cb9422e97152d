use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use dgspan::experiment::{analyze, run, ExperimentConfig, ShapeSource};
use dgspan::formats::{self, f17, graph_to_json, parse_rational, to_json, CoordStyle, ParamsJson};
use dgspan::generators::Generator;
use dgspan::parallel::{all_pairs, build_delaunay_par};
use dgspan::svg::{render_svg, Overlays};
use dgspan_core::delaunay::{oracle_edges, oracle_window, default_window, DelaunayGraph, OracleOptions};
use dgspan_core::params::{compute_params, ShapeParams};
use dgspan_core::spanner::{diamond_check, direct_path, stretch_from_rows};
use dgspan_core::{ConvexBody, Point};
use serde_json::json;

/// Delaunay graphs under convex polygonal distance functions.
#[derive(Parser)]
#[command(name = "dgspan", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Shape parameters and stretch bounds of a body.
    Params {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Build the Delaunay graph of one instance and write it as JSON.
    Build {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Write coordinates as p/q fractions.
        #[arg(long)]
        rational: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run every check on one instance; exits with 1 when any fails.
    Verify {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Euclidean stretch of one instance against the bound.
    Stretch {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Compare the graph with the sampled Voronoi oracle.
    OracleDiff {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Draw one instance as SVG.
    Render {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Outline the witness homothet of every edge.
        #[arg(long)]
        witnesses: bool,
        /// Draw the diamond of every edge.
        #[arg(long)]
        diamonds: bool,
        /// Highlight the direct path between two sites, as `p,q`.
        #[arg(long)]
        path: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Parameters, then every check on every seed.
    Run {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Clone)]
struct ShapeArgs {
    /// Preset: square, equilateral-triangle, regular-K, random-convex-N[-SEED].
    #[arg(long, default_value = "square")]
    shape: String,
    /// Shape JSON file; overrides --shape.
    #[arg(long)]
    shape_file: Option<PathBuf>,
    /// Origin of the body, as `x,y`.
    #[arg(long)]
    origin: Option<String>,
    /// Tolerance of the parameter searches.
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
}

#[derive(Args, Clone)]
struct InstanceArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    /// uniform, grid, collinear, cocircular, clustered or file.
    #[arg(long = "gen", default_value = "uniform")]
    generator: String,
    #[arg(long, default_value_t = 20)]
    n: usize,
    /// `a..b`, `a..=b`, `a` or a comma list.
    #[arg(long, default_value = "0")]
    seeds: String,
    /// Points JSON for `--gen file`.
    #[arg(long)]
    points: Option<PathBuf>,
    /// Graph JSON to check instead of building one.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Relative tolerance of the checks.
    #[arg(long, default_value_t = 1e-9)]
    assert_tol: f64,
    /// Oracle resolution; instances of at most 12 sites are compared.
    #[arg(long)]
    oracle_res: Option<usize>,
}

#[derive(Args, Clone)]
struct OutArgs {
    #[arg(long)]
    out_json: Option<PathBuf>,
    #[arg(long)]
    out_svg: Option<PathBuf>,
}

fn parse_seeds(s: &str) -> Result<Vec<u64>> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once("..") {
        let a: u64 = a.trim().parse().context("seed range start")?;
        let (b, incl) = match b.strip_prefix('=') {
            Some(b) => (b, true),
            None => (b, false),
        };
        let b: u64 = b.trim().parse().context("seed range end")?;
        let seeds: Vec<u64> = if incl { (a..=b).collect() } else { (a..b).collect() };
        if seeds.is_empty() {
            bail!("empty seed range `{s}`");
        }
        return Ok(seeds);
    }
    s.split(',').map(|t| t.trim().parse::<u64>().with_context(|| format!("bad seed `{t}`"))).collect()
}

fn parse_point(s: &str) -> Result<Point> {
    let (x, y) = s.split_once(',').context("expected `x,y`")?;
    Ok(Point::new(parse_rational(x)?, parse_rational(y)?))
}

fn parse_pair(s: &str) -> Result<(usize, usize)> {
    let (p, q) = s.split_once(',').context("expected `p,q`")?;
    Ok((p.trim().parse()?, q.trim().parse()?))
}

impl ShapeArgs {
    fn source(&self) -> ShapeSource {
        match &self.shape_file {
            Some(p) => ShapeSource::File(p.clone()),
            None => ShapeSource::Preset(self.shape.clone()),
        }
    }

    fn origin(&self) -> Result<Option<Point>> {
        self.origin.as_deref().map(parse_point).transpose()
    }

    fn body(&self) -> Result<ConvexBody> {
        Ok(self.source().load(self.origin()?.as_ref())?)
    }
}

impl InstanceArgs {
    fn config(&self, out: &OutArgs) -> Result<ExperimentConfig> {
        let generator: Generator = self.generator.parse()?;
        let config = ExperimentConfig {
            shape: self.shape.source(),
            origin: self.shape.origin()?,
            generator,
            points_file: self.points.clone(),
            n: self.n,
            seeds: parse_seeds(&self.seeds)?,
            param_tol: self.shape.tol,
            assert_tol: self.assert_tol,
            oracle: self.oracle_res,
            out_json: out.out_json.clone(),
            out_svg: out.out_svg.clone(),
            ..ExperimentConfig::default()
        };
        config.validate()?;
        Ok(config)
    }

    /// The body and the graph of the first seed, or of `--graph`.
    fn instance(&self) -> Result<(ConvexBody, DelaunayGraph)> {
        let body = self.shape.body()?;
        if let Some(path) = &self.graph {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            return Ok((body, formats::parse_graph(&text)?));
        }
        let config = self.config(&OutArgs { out_json: None, out_svg: None })?;
        let sites = config.sites(config.seeds[0])?;
        let g = build_delaunay_par(&body, &sites);
        Ok((body, g))
    }

    fn params(&self, body: &ConvexBody) -> ShapeParams {
        compute_params(body, self.shape.tol)
    }
}

fn emit(text: &str, out: &OutArgs) -> Result<()> {
    match &out.out_json {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_svg(body: &ConvexBody, g: &DelaunayGraph, ov: &Overlays, out: &OutArgs) -> Result<()> {
    if let Some(p) = &out.out_svg {
        std::fs::write(p, render_svg(body, g, ov)).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main_inner() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Params { shape, out } => {
            let body = shape.body()?;
            emit(&to_json(&ParamsJson::new(&compute_params(&body, shape.tol))), &out)?;
        }
        Cmd::Build { inst, rational, out } => {
            let (body, g) = inst.instance()?;
            let style = if rational { CoordStyle::Rational } else { CoordStyle::Decimal };
            emit(&graph_to_json(&g, style), &out)?;
            emit_svg(&body, &g, &Overlays::default(), &out)?;
        }
        Cmd::Verify { inst, out } => {
            let (body, g) = inst.instance()?;
            let params = inst.params(&body);
            let rep = analyze(&body, &params, &g, inst.assert_tol, inst.oracle_res);
            emit(&to_json(&json!({ "params": ParamsJson::new(&params), "report": rep })), &out)?;
            let diamonds = diamond_check(&g, params.alpha - params.tolerance);
            emit_svg(&body, &g, &Overlays { witnesses: true, diamonds: Some(&diamonds), ..Default::default() }, &out)?;
            return Ok(status(rep.passed));
        }
        Cmd::Stretch { inst, out } => {
            let (body, g) = inst.instance()?;
            let params = inst.params(&body);
            let rows = all_pairs(&g);
            let r = stretch_from_rows(&g, &rows, &params)?;
            let ok = r.within_bound(inst.assert_tol);
            let per_pair: Vec<Vec<serde_json::Value>> =
                r.per_pair_stretch.iter().map(|row| row.iter().map(|&v| f17(v)).collect()).collect();
            emit(
                &to_json(&json!({
                    "max_stretch": f17(r.max_stretch),
                    "arg_pair": [r.arg_pair.0, r.arg_pair.1],
                    "bound_used": f17(r.bound_used),
                    "is_triangulation": r.is_triangulation,
                    "within_bound": ok,
                    "per_pair_stretch": per_pair,
                })),
                &out,
            )?;
            return Ok(status(ok));
        }
        Cmd::OracleDiff { inst, out } => {
            let (body, g) = inst.instance()?;
            let resolution = inst.oracle_res.unwrap_or(1024);
            let rep = oracle_edges(&body, &g.sites, &OracleOptions { resolution, ..OracleOptions::default() })?;
            let mine: Vec<[usize; 2]> = g.edges.iter().map(|&(a, b)| [a, b]).collect();
            let theirs: Vec<[usize; 2]> = rep.edges.iter().map(|&(a, b)| [a, b]).collect();
            let missing: Vec<&[usize; 2]> = theirs.iter().filter(|e| !mine.contains(e)).collect();
            let extra: Vec<&[usize; 2]> = mine.iter().filter(|e| !theirs.contains(e)).collect();
            let ok = missing.is_empty() && extra.is_empty();
            emit(
                &to_json(&json!({
                    "resolution": resolution,
                    "graph_edges": mine,
                    "oracle_edges": theirs,
                    "missing": missing,
                    "extra": extra,
                    "equal": ok,
                })),
                &out,
            )?;
            if out.out_svg.is_some() {
                let grid = oracle_window(&body, &g.sites, default_window(&g.sites), resolution.min(256));
                emit_svg(&body, &g, &Overlays { oracle: Some(&grid), ..Default::default() }, &out)?;
            }
            return Ok(status(ok));
        }
        Cmd::Render { inst, witnesses, diamonds, path, out } => {
            let (body, g) = inst.instance()?;
            let params = (diamonds || path.is_some()).then(|| inst.params(&body));
            let dia = match (&params, diamonds) {
                (Some(p), true) => Some(diamond_check(&g, p.alpha - p.tolerance)),
                _ => None,
            };
            let dp = match (&params, path) {
                (Some(p), Some(s)) => {
                    let (a, b) = parse_pair(&s)?;
                    if a == b || a >= g.len() || b >= g.len() {
                        bail!("--path needs two distinct sites below {}", g.len());
                    }
                    let ob = body.with_origin(&p.origin_star)?;
                    Some(direct_path(&ob, &g.sites, &g, a, b))
                }
                _ => None,
            };
            let grid = inst.oracle_res.map(|r| oracle_window(&body, &g.sites, default_window(&g.sites), r));
            let ov = Overlays { witnesses, diamonds: dia.as_ref(), path: dp.as_ref(), oracle: grid.as_ref() };
            let svg = render_svg(&body, &g, &ov);
            match &out.out_svg {
                Some(p) => std::fs::write(p, svg).with_context(|| format!("writing {}", p.display()))?,
                None => print!("{svg}"),
            }
        }
        Cmd::Run { inst, out } => {
            let config = inst.config(&out)?;
            let report = run(&config)?;
            if config.out_json.is_none() {
                print!("{}", report.to_json());
            }
            return Ok(status(report.passed));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match main_inner() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
