//! CSV, SVG and JSON emitters for clouds and reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cplane::{CPoint, PointCloud};
use crate::error::{Error, Result};

/// Crate version, recorded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn fmt_f(x: f64) -> String {
    // 17 significant digits: enough to round-trip any f64.
    format!("{x:.16e}")
}

/// Writes `# key=value` lines for the meta map, a header, then one row per
/// point. Clouds with a domain get `index,z_re,z_im,b_re,b_im`; others get
/// `index,re,im`.
pub fn write_csv_to<W: Write>(cloud: &PointCloud, mut out: W) -> Result<()> {
    for (k, v) in &cloud.meta {
        writeln!(out, "# {k}={}", v.replace('\n', " "))?;
    }
    match &cloud.domain {
        Some(domain) => {
            writeln!(out, "index,z_re,z_im,b_re,b_im")?;
            for (i, (z, b)) in domain.iter().zip(&cloud.points).enumerate() {
                writeln!(out, "{i},{},{},{},{}", fmt_f(z.re), fmt_f(z.im), fmt_f(b.re), fmt_f(b.im))?;
            }
        }
        None => {
            writeln!(out, "index,re,im")?;
            for (i, p) in cloud.points.iter().enumerate() {
                writeln!(out, "{i},{},{}", fmt_f(p.re), fmt_f(p.im))?;
            }
        }
    }
    Ok(())
}

pub fn write_csv(cloud: &PointCloud, path: impl AsRef<Path>) -> Result<()> {
    let mut out = std::io::BufWriter::new(fs::File::create(path)?);
    write_csv_to(cloud, &mut out)?;
    out.flush()?;
    Ok(())
}

/// Reads the format produced by [`write_csv_to`].
pub fn read_csv_from<R: BufRead>(input: R) -> Result<PointCloud> {
    let mut meta = BTreeMap::new();
    let mut header: Option<bool> = None;
    let mut points = Vec::new();
    let mut domain = Vec::new();
    for (lineno, line) in input.lines().enumerate() {
        let line = line?;
        let bad = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
        if let Some(rest) = line.strip_prefix("# ") {
            let (k, v) = rest.split_once('=').ok_or_else(|| bad("meta line without `=`"))?;
            meta.insert(k.to_string(), v.to_string());
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        match header {
            None => {
                header = Some(match line.trim() {
                    "index,z_re,z_im,b_re,b_im" => true,
                    "index,re,im" => false,
                    _ => return Err(bad("unrecognized header")),
                });
            }
            Some(with_domain) => {
                let fields: Vec<f64> = line
                    .split(',')
                    .skip(1)
                    .map(|f| f.trim().parse::<f64>().map_err(|_| bad("bad number")))
                    .collect::<Result<_>>()?;
                match (with_domain, fields.as_slice()) {
                    (true, &[zr, zi, br, bi]) => {
                        domain.push(Complex64::new(zr, zi));
                        points.push(Complex64::new(br, bi));
                    }
                    (false, &[re, im]) => points.push(Complex64::new(re, im)),
                    _ => return Err(bad("wrong number of columns")),
                }
            }
        }
    }
    let with_domain = header.ok_or_else(|| Error::Parse("missing header".into()))?;
    let mut cloud = if with_domain {
        PointCloud::with_domain(points, domain)
    } else {
        PointCloud::new(points)
    };
    cloud.meta = meta;
    Ok(cloud)
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<PointCloud> {
    read_csv_from(BufReader::new(fs::File::open(path)?))
}

/// Drawing options for [`render_svg`].
#[derive(Clone, Debug, Default)]
pub struct SvgOptions {
    /// Defaults to a title assembled from the cloud's meta.
    pub title: Option<String>,
    /// Fixed `(x_min, x_max, y_min, y_max)` instead of auto-fitting.
    pub view: Option<(f64, f64, f64, f64)>,
    /// Join the cloud points into a closed polyline (boundary clouds).
    pub connect: bool,
}

const SVG_SIZE: f64 = 800.0;
const PLOT_LEFT: f64 = 70.0;
const PLOT_TOP: f64 = 50.0;
const PLOT_SIZE: f64 = 690.0;

fn nice_step(span: f64) -> f64 {
    let raw = span / 6.0;
    let mag = 10f64.powf(raw.log10().floor());
    let m = raw / mag;
    let f = if m < 1.5 {
        1.0
    } else if m < 3.5 {
        2.0
    } else if m < 7.5 {
        5.0
    } else {
        10.0
    };
    f * mag
}

fn default_title(cloud: &PointCloud) -> String {
    let keys = ["space", "symbol_spec", "cloud", "case"];
    let parts: Vec<String> = keys
        .iter()
        .filter_map(|k| cloud.meta.get(*k).map(|v| format!("{k}={v}")))
        .collect();
    if parts.is_empty() {
        format!("{} points", cloud.len())
    } else {
        parts.join("  ")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Equal-aspect square view around the points, padded by 5%.
fn fit_view(points: impl Iterator<Item = CPoint>) -> (f64, f64, f64, f64) {
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in points {
        x0 = x0.min(p.re);
        x1 = x1.max(p.re);
        y0 = y0.min(p.im);
        y1 = y1.max(p.im);
    }
    if x0 > x1 {
        return (-1.0, 1.0, -1.0, 1.0);
    }
    let half = (0.5 * (x1 - x0).max(y1 - y0)).max(1e-9) * 1.05;
    let (cx, cy) = (0.5 * (x0 + x1), 0.5 * (y0 + y1));
    (cx - half, cx + half, cy - half, cy + half)
}

/// SVG scatter plot of the cloud, with an optional hull outline.
pub fn render_svg(cloud: &PointCloud, hull: Option<&[CPoint]>, opts: &SvgOptions) -> String {
    let view = opts.view.unwrap_or_else(|| {
        fit_view(cloud.points.iter().chain(hull.unwrap_or(&[])).copied())
    });
    let (x0, x1, y0, y1) = view;
    let sx = PLOT_SIZE / (x1 - x0);
    let sy = PLOT_SIZE / (y1 - y0);
    let px = |x: f64| PLOT_LEFT + (x - x0) * sx;
    let py = |y: f64| PLOT_TOP + (y1 - y) * sy;
    let title = opts.title.clone().unwrap_or_else(|| default_title(cloud));

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="30" font-family="sans-serif" font-size="15" text-anchor="middle">{}</text>"#,
        SVG_SIZE / 2.0,
        escape(&title)
    );
    let _ = writeln!(
        s,
        r#"<rect x="{PLOT_LEFT}" y="{PLOT_TOP}" width="{PLOT_SIZE}" height="{PLOT_SIZE}" fill="none" stroke="black"/>"#
    );

    let mut ticks = String::new();
    for (lo, hi, horizontal) in [(x0, x1, true), (y0, y1, false)] {
        let step = nice_step(hi - lo);
        let mut k = (lo / step).ceil() as i64;
        while (k as f64) * step <= hi {
            let v = k as f64 * step;
            let label = format!("{}", (v / step).round() * step);
            let label = if label.len() > 8 { format!("{v:.3e}") } else { label };
            if horizontal {
                let x = px(v);
                let yb = PLOT_TOP + PLOT_SIZE;
                let _ = writeln!(ticks, r#"<line x1="{x:.2}" y1="{yb}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#, yb + 6.0);
                let _ = writeln!(
                    ticks,
                    r#"<text x="{x:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="middle">{label}</text>"#,
                    yb + 20.0
                );
            } else {
                let y = py(v);
                let _ = writeln!(ticks, r#"<line x1="{:.2}" y1="{y:.2}" x2="{PLOT_LEFT}" y2="{y:.2}" stroke="black"/>"#, PLOT_LEFT - 6.0);
                let _ = writeln!(
                    ticks,
                    r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">{label}</text>"#,
                    PLOT_LEFT - 9.0,
                    y + 4.0
                );
            }
            k += 1;
        }
    }
    s.push_str(&ticks);

    let polyline = |pts: &[CPoint], color: &str| {
        let coords: Vec<String> = pts
            .iter()
            .chain(pts.first())
            .map(|p| format!("{:.2},{:.2}", px(p.re), py(p.im)))
            .collect();
        format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1\"/>\n",
            coords.join(" ")
        )
    };
    if opts.connect && !cloud.is_empty() {
        s.push_str(&polyline(&cloud.points, "steelblue"));
    }
    s.push_str("<g fill=\"steelblue\">\n");
    for p in &cloud.points {
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="1"/>"#, px(p.re), py(p.im));
    }
    s.push_str("</g>\n");
    if let Some(h) = hull.filter(|h| !h.is_empty()) {
        s.push_str(&polyline(h, "crimson"));
    }
    s.push_str("</svg>\n");
    s
}

pub fn write_svg(cloud: &PointCloud, hull: Option<&[CPoint]>, path: impl AsRef<Path>) -> Result<()> {
    let opts = SvgOptions {
        connect: cloud.meta.get("cloud").map(String::as_str) == Some("numerical_range_boundary"),
        ..SvgOptions::default()
    };
    write_svg_with(cloud, hull, &opts, path)
}

pub fn write_svg_with(
    cloud: &PointCloud,
    hull: Option<&[CPoint]>,
    opts: &SvgOptions,
    path: impl AsRef<Path>,
) -> Result<()> {
    fs::write(path, render_svg(cloud, hull, opts))?;
    Ok(())
}

/// Outcome of one command: the configuration it ran with, its results, and
/// an overall pass flag for verification runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    pub config: BTreeMap<String, String>,
    pub results: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub passed: Option<bool>,
    /// Wall-clock seconds; left out unless requested so that reports are
    /// byte-for-byte reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_seconds: Option<f64>,
}

impl Report {
    pub fn new(command: impl Into<String>, config: BTreeMap<String, String>, results: serde_json::Value) -> Self {
        Report {
            command: command.into(),
            version: VERSION.to_string(),
            config,
            results,
            passed: None,
            timing_seconds: None,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

pub fn write_report(report: &Report, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, report.to_json()?)?;
    Ok(())
}

pub fn read_report(path: impl AsRef<Path>) -> Result<Report> {
    Report::from_json(&fs::read_to_string(path)?)
}
