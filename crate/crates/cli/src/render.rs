//! Deterministic SVG output for projective scenes.

use projcore::linalg::{self, V3};
use projcore::{ProjLine, ProjPoint};
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq)]
pub struct Style {
    pub stroke: String,
    pub fill: Option<String>,
    pub width: f64,
    pub dashed: bool,
}

impl Style {
    pub fn stroke(color: &str, width: f64) -> Self {
        Style {
            stroke: color.into(),
            fill: None,
            width,
            dashed: false,
        }
    }
    pub fn filled(color: &str, fill: &str, width: f64) -> Self {
        Style {
            stroke: color.into(),
            fill: Some(fill.into()),
            width,
            dashed: false,
        }
    }
    pub fn dashed(mut self) -> Self {
        self.dashed = true;
        self
    }
}

/// Which affine chart to draw in.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub enum Chart {
    /// `z = 1`.
    #[default]
    Standard,
    /// Complement of the given line.
    Avoiding(ProjLine),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RenderScene {
    pub polygons: Vec<(Vec<ProjPoint>, Style)>,
    pub lines: Vec<(ProjLine, Style)>,
    pub points: Vec<(ProjPoint, String)>,
    pub chart: Chart,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RenderError {
    #[error("no affine chart keeps every object finite")]
    ChartFailure,
}

/// Orthonormal frame `(r0, r1, n)` with `n` the line at infinity.
struct Frame([V3<f64>; 3]);

impl Frame {
    fn new(n: V3<f64>) -> Frame {
        let n = linalg::normalize(&n);
        let k = (0..3)
            .min_by(|a, b| n[*a].abs().total_cmp(&n[*b].abs()))
            .unwrap();
        let mut e = [0.0; 3];
        e[k] = 1.0;
        let r0 = linalg::normalize(&linalg::sub(&e, &linalg::scale(&n, linalg::dot(&e, &n))));
        Frame([r0, linalg::cross(&n, &r0), n])
    }

    fn point(&self, p: &ProjPoint) -> [f64; 2] {
        let v = p.coords();
        let w = linalg::dot(&self.0[2], &v);
        [
            linalg::dot(&self.0[0], &v) / w,
            linalg::dot(&self.0[1], &v) / w,
        ]
    }

    /// `a x + b y + c = 0` in chart coordinates.
    fn line(&self, l: &ProjLine) -> [f64; 3] {
        let v = l.coords();
        self.0.map(|r| linalg::dot(&r, &v))
    }
}

const CHART_EPS: f64 = 1e-6;

fn sin_angle(a: &V3<f64>, b: &V3<f64>) -> f64 {
    linalg::norm(&linalg::cross(a, b)) / (linalg::norm(a) * linalg::norm(b))
}

fn chart_ok(scene: &RenderScene, n: &V3<f64>) -> bool {
    let pts = scene
        .polygons
        .iter()
        .flat_map(|(v, _)| v.iter())
        .chain(scene.points.iter().map(|(p, _)| p));
    for p in pts {
        let v = p.coords();
        if linalg::dot(n, &v).abs() / (linalg::norm(n) * linalg::norm(&v)) < CHART_EPS {
            return false;
        }
    }
    scene
        .lines
        .iter()
        .all(|(l, _)| sin_angle(&l.coords(), n) >= CHART_EPS)
}

/// The requested chart, or the first of a fixed list of tilted ones that
/// keeps everything finite.
fn choose_chart(scene: &RenderScene) -> Result<Frame, RenderError> {
    let base = match scene.chart {
        Chart::Standard => [0.0, 0.0, 1.0],
        Chart::Avoiding(l) => l.coords(),
    };
    let f = Frame::new(base);
    let mut candidates = vec![base];
    for k in 1..=24 {
        let a = 0.05 * k as f64;
        let axis = if k % 2 == 0 { f.0[0] } else { f.0[1] };
        let tilt = linalg::add(
            &linalg::scale(&base, a.cos()),
            &linalg::scale(&axis, a.sin()),
        );
        candidates.push(tilt);
    }
    candidates
        .into_iter()
        .find(|n| chart_ok(scene, n))
        .map(Frame::new)
        .ok_or(RenderError::ChartFailure)
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn style_attrs(s: &Style) -> String {
    let mut a = format!(
        "fill=\"{}\" stroke=\"{}\" stroke-width=\"{}\"",
        s.fill.as_deref().unwrap_or("none"),
        s.stroke,
        num(s.width)
    );
    if s.dashed {
        a.push_str(" stroke-dasharray=\"6 4\"");
    }
    a
}

/// Segment of `a x + b y + c = 0` inside the box.
fn clip(l: [f64; 3], lo: [f64; 2], hi: [f64; 2]) -> Option<([f64; 2], [f64; 2])> {
    let [a, b, c] = l;
    let mut hits: Vec<[f64; 2]> = Vec::new();
    if b.abs() > 1e-300 {
        for x in [lo[0], hi[0]] {
            let y = -(a * x + c) / b;
            if y >= lo[1] && y <= hi[1] {
                hits.push([x, y]);
            }
        }
    }
    if a.abs() > 1e-300 {
        for y in [lo[1], hi[1]] {
            let x = -(b * y + c) / a;
            if x >= lo[0] && x <= hi[0] {
                hits.push([x, y]);
            }
        }
    }
    // extreme pair along the line direction
    let d = [-b, a];
    let key = |p: &[f64; 2]| p[0] * d[0] + p[1] * d[1];
    let first = hits.iter().min_by(|p, q| key(p).total_cmp(&key(q)))?;
    let last = hits.iter().max_by(|p, q| key(p).total_cmp(&key(q)))?;
    if key(last) - key(first) <= 0.0 {
        return None;
    }
    Some((*first, *last))
}

pub fn render_svg(scene: &RenderScene, size: u32) -> Result<String, RenderError> {
    let sz = size as f64;
    let mut out = String::new();
    writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>").unwrap();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    )
    .unwrap();
    if scene.polygons.is_empty() && scene.lines.is_empty() && scene.points.is_empty() {
        out.push_str("</svg>\n");
        return Ok(out);
    }
    let fr = choose_chart(scene)?;
    let polys: Vec<Vec<[f64; 2]>> = scene
        .polygons
        .iter()
        .map(|(v, _)| v.iter().map(|p| fr.point(p)).collect())
        .collect();
    let pts: Vec<[f64; 2]> = scene.points.iter().map(|(p, _)| fr.point(p)).collect();

    let all: Vec<[f64; 2]> = polys.iter().flatten().chain(&pts).copied().collect();
    let (mut lo, mut hi) = ([-1.0, -1.0], [1.0, 1.0]);
    if !all.is_empty() {
        lo = [f64::INFINITY; 2];
        hi = [f64::NEG_INFINITY; 2];
        for p in &all {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    let centre = [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0];
    let half = 0.6 * span;
    let (lo, hi) = (
        [centre[0] - half, centre[1] - half],
        [centre[0] + half, centre[1] + half],
    );
    let scale = sz / (2.0 * half);
    let px = |p: [f64; 2]| {
        (
            num((p[0] - lo[0]) * scale),
            num(sz - (p[1] - lo[1]) * scale),
        )
    };

    for (v, (_, st)) in polys.iter().zip(&scene.polygons) {
        let coords: Vec<String> = v
            .iter()
            .map(|&p| {
                let (x, y) = px(p);
                format!("{x},{y}")
            })
            .collect();
        writeln!(
            out,
            "  <polygon points=\"{}\" {}/>",
            coords.join(" "),
            style_attrs(st)
        )
        .unwrap();
    }
    for (l, st) in &scene.lines {
        if let Some((a, b)) = clip(fr.line(l), lo, hi) {
            let ((x1, y1), (x2, y2)) = (px(a), px(b));
            writeln!(
                out,
                "  <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" {}/>",
                style_attrs(st)
            )
            .unwrap();
        }
    }
    for (p, (_, label)) in pts.iter().zip(&scene.points) {
        let (x, y) = px(*p);
        writeln!(
            out,
            "  <circle cx=\"{x}\" cy=\"{y}\" r=\"3.000000\" fill=\"black\"/>"
        )
        .unwrap();
        if !label.is_empty() {
            let (tx, ty) = px([p[0] + 0.02 * span, p[1] + 0.02 * span]);
            writeln!(out, "  <text x=\"{tx}\" y=\"{ty}\" font-family=\"sans-serif\" font-size=\"12\">{label}</text>").unwrap();
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
