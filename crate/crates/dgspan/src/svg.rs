//! SVG pictures of Delaunay graphs with optional overlays.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use dgspan_core::delaunay::{DelaunayGraph, OracleGrid};
use dgspan_core::spanner::{DiamondReport, DirectPath};
use dgspan_core::ConvexBody;

use crate::formats::approx;

/// What to draw on top of sites and edges.
#[derive(Default, Clone, Copy)]
pub struct Overlays<'a> {
    pub witnesses: bool,
    pub diamonds: Option<&'a DiamondReport>,
    pub path: Option<&'a DirectPath>,
    /// Raster of nearest-site labels drawn under everything else.
    pub oracle: Option<&'a OracleGrid>,
}

const PALETTE: [&str; 12] = [
    "#fde2e4", "#e2ece9", "#cddafd", "#fff1e6", "#dfe7fd", "#f0efeb", "#bee1e6", "#fad2e1", "#e9edc9", "#d8e2dc",
    "#ffe5d9", "#eae4e9",
];

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    match s {
        "-0" | "" => "0".to_string(),
        _ => s.to_string(),
    }
}

fn pt(p: [f64; 2]) -> String {
    format!("{},{}", num(p[0]), num(-p[1]))
}

fn polygon(out: &mut String, class: &str, pts: &[[f64; 2]]) {
    let list: Vec<String> = pts.iter().map(|&p| pt(p)).collect();
    let _ = writeln!(out, r#"<polygon class="{class}" points="{}"/>"#, list.join(" "));
}

/// `[x_min, y_min, width, height]` of the sites plus a 10% margin on each
/// side, in picture coordinates (y pointing down).
fn view_box(g: &DelaunayGraph) -> [f64; 4] {
    let pts: Vec<[f64; 2]> = g.sites.points().iter().map(|p| p.f).collect();
    if pts.is_empty() {
        return [-1.0, -1.0, 2.0, 2.0];
    }
    let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
    for p in &pts {
        b[0] = b[0].min(p[0]);
        b[1] = b[1].min(-p[1]);
        b[2] = b[2].max(p[0]);
        b[3] = b[3].max(-p[1]);
    }
    let (mut w, mut h) = (b[2] - b[0], b[3] - b[1]);
    let fallback = w.max(h).max(1.0);
    if w == 0.0 {
        b[0] -= fallback / 2.0;
        w = fallback;
    }
    if h == 0.0 {
        b[1] -= fallback / 2.0;
        h = fallback;
    }
    [b[0] - 0.1 * w, b[1] - 0.1 * h, 1.2 * w, 1.2 * h]
}

pub fn render_svg(body: &ConvexBody, g: &DelaunayGraph, ov: &Overlays) -> String {
    let vb = view_box(g);
    let size = vb[2].max(vb[3]);
    let stroke = size * 0.003;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        num(vb[0]),
        num(vb[1]),
        num(vb[2]),
        num(vb[3])
    );
    let _ = writeln!(
        out,
        "<style>.edge{{stroke:#222;stroke-width:{s}}} .site{{fill:#c00}} .witness{{fill:none;stroke:#36c;stroke-width:{h}}} \
.diamond{{fill:#fc0;fill-opacity:0.25;stroke:none}} .violation{{fill:#f00;fill-opacity:0.5}} \
.path{{fill:none;stroke:#0a0;stroke-width:{w}}} .segment{{stroke:#0a0;stroke-width:{h};stroke-dasharray:{d}}}</style>",
        s = num(stroke),
        h = num(stroke / 2.0),
        w = num(stroke * 2.5),
        d = num(stroke * 4.0),
    );
    if let Some(grid) = ov.oracle {
        out.push_str("<g class=\"oracle\">\n");
        let step = grid.step();
        for row in 0..grid.res {
            let mut col = 0;
            while col < grid.res {
                let l = grid.label(col, row);
                let start = col;
                while col < grid.res && grid.label(col, row) == l {
                    col += 1;
                }
                let x = grid.window[0] + start as f64 * step[0];
                let y = grid.window[1] + (row + 1) as f64 * step[1];
                let _ = writeln!(
                    out,
                    r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{}"/>"#,
                    num(x),
                    num(-y),
                    num((col - start) as f64 * step[0]),
                    num(step[1]),
                    PALETTE[l as usize % PALETTE.len()]
                );
            }
        }
        out.push_str("</g>\n");
    }
    let site = |i: usize| g.sites.point(i).f;
    if let Some(d) = ov.diamonds {
        out.push_str("<g class=\"diamonds\">\n");
        for e in &d.edges {
            let (a, b) = (site(e.edge.0), site(e.edge.1));
            let class = if e.left_empty || e.right_empty { "diamond" } else { "diamond violation" };
            polygon(&mut out, class, &[a, e.apex_left, b, e.apex_right]);
        }
        out.push_str("</g>\n");
    }
    if ov.witnesses {
        out.push_str("<g class=\"witnesses\">\n");
        for h in g.witnesses.values() {
            let c = [approx(&h.center.x), approx(&h.center.y)];
            polygon(&mut out, "witness", &body.homothet_vertices_f64(c, approx(&h.scale)));
        }
        out.push_str("</g>\n");
    }
    out.push_str("<g class=\"edges\">\n");
    for &(i, j) in &g.edges {
        let (a, b) = (site(i), site(j));
        let _ = writeln!(
            out,
            r#"<line class="edge" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            num(a[0]),
            num(-a[1]),
            num(b[0]),
            num(-b[1])
        );
    }
    out.push_str("</g>\n");
    if let Some(p) = ov.path {
        let (a, b) = (site(p.vertices[0]), site(*p.vertices.last().expect("nonempty")));
        let _ = writeln!(
            out,
            r#"<line class="segment" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            num(a[0]),
            num(-a[1]),
            num(b[0]),
            num(-b[1])
        );
        let list: Vec<String> = p.vertices.iter().map(|&v| pt(site(v))).collect();
        let _ = writeln!(out, r#"<polyline class="path" points="{}"/>"#, list.join(" "));
    }
    out.push_str("<g class=\"sites\">\n");
    for (i, s) in g.sites.points().iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<circle class="site" id="s{i}" cx="{}" cy="{}" r="{}"/>"#,
            num(s.f[0]),
            num(-s.f[1]),
            num(size * 0.008)
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

pub fn export_svg(body: &ConvexBody, g: &DelaunayGraph, ov: &Overlays, path: &Path) -> io::Result<()> {
    std::fs::write(path, render_svg(body, g, ov))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format_is_short() {
        assert_eq!(num(1.5), "1.5");
        assert_eq!(num(-0.0000001), "0");
        assert_eq!(num(100.0), "100");
        assert_eq!(num(0.1234567), "0.123457");
    }
}
