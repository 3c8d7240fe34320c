//! Standalone SVG of an instance: points, limiting median lines, both yolks.

use std::fmt::Write;

use yolkkit::yolk::YolkOptions;
use yolkkit::{enumerate_limiting_median_lines, Electorate, Hyperplane};

use crate::error::CliError;
use crate::report::analyze;

const SIZE: f64 = 600.0;
const MARGIN: f64 = 20.0;

struct View {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
    scale: f64,
}

impl View {
    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        (
            MARGIN + (x - self.x0) * self.scale,
            SIZE - MARGIN - (y - self.y0) * self.scale,
        )
    }

    /// Segment of the line inside the view box, if any.
    fn clip(&self, h: &Hyperplane) -> Option<[(f64, f64); 2]> {
        let (a, b, c) = (h.normal()[0], h.normal()[1], h.offset());
        let mut hits: Vec<(f64, f64)> = Vec::new();
        let eps = 1e-12 * (1.0 + self.x1 - self.x0);
        if b.abs() > 1e-15 {
            for x in [self.x0, self.x1] {
                let y = (c - a * x) / b;
                if y >= self.y0 - eps && y <= self.y1 + eps {
                    hits.push((x, y));
                }
            }
        }
        if a.abs() > 1e-15 {
            for y in [self.y0, self.y1] {
                let x = (c - b * y) / a;
                if x >= self.x0 - eps && x <= self.x1 + eps {
                    hits.push((x, y));
                }
            }
        }
        let dir = (-b, a);
        let along = |p: &(f64, f64)| p.0 * dir.0 + p.1 * dir.1;
        let lo = hits.iter().min_by(|p, q| along(p).total_cmp(&along(q)))?;
        let hi = hits.iter().max_by(|p, q| along(p).total_cmp(&along(q)))?;
        Some([*lo, *hi])
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

pub fn render(e: &Electorate, opts: &YolkOptions) -> Result<String, CliError> {
    if e.dim() != 2 {
        return Err(CliError::Failed(format!(
            "plots need planar points, found dimension {}",
            e.dim()
        )));
    }
    let a = analyze(e, opts)?;
    let y = a.yolk.as_ref().expect("planar analysis has a yolk");
    let lines = enumerate_limiting_median_lines(e)?.lines;

    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    let mut grow = |cx: f64, cy: f64, r: f64| {
        x0 = x0.min(cx - r);
        y0 = y0.min(cy - r);
        x1 = x1.max(cx + r);
        y1 = y1.max(cy + r);
    };
    for p in e.points() {
        grow(p.x(), p.y(), 0.0);
    }
    grow(y.ball.center.x(), y.ball.center.y(), y.ball.radius);
    grow(a.lp.ball.center.x(), a.lp.ball.center.y(), a.lp.ball.radius);
    let extent = (x1 - x0).max(y1 - y0).max(1e-9);
    let pad = 0.1 * extent;
    let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
    let half = extent / 2.0 + pad;
    let view = View {
        x0: cx - half,
        y0: cy - half,
        x1: cx + half,
        y1: cy + half,
        scale: (SIZE - 2.0 * MARGIN) / (2.0 * half),
    };

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let _ = writeln!(s, r##"<g id="limiting-lines" stroke="#9a9a9a" stroke-width="1">"##);
    for h in &lines {
        if let Some([p, q]) = view.clip(h) {
            let (ax, ay) = view.px(p.0, p.1);
            let (bx, by) = view.px(q.0, q.1);
            let _ = writeln!(
                s,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                num(ax),
                num(ay),
                num(bx),
                num(by)
            );
        }
    }
    let _ = writeln!(s, "</g>");

    let circle = |s: &mut String, id: &str, ball: &yolkkit::Ball, style: &str| {
        let (px, py) = view.px(ball.center.x(), ball.center.y());
        let r = ball.radius * view.scale;
        if r < 0.5 {
            // Zero-radius marker: a small cross.
            let _ = writeln!(
                s,
                r#"<path id="{id}" d="M {} {} l 8 8 m -8 0 l 8 -8" {style}/>"#,
                num(px - 4.0),
                num(py - 4.0)
            );
        } else {
            let _ = writeln!(
                s,
                r#"<circle id="{id}" cx="{}" cy="{}" r="{}" fill="none" {style}/>"#,
                num(px),
                num(py),
                num(r)
            );
        }
    };
    circle(&mut s, "yolk", &y.ball, r##"stroke="#1f5fbf" stroke-width="2""##);
    circle(
        &mut s,
        "lp-yolk",
        &a.lp.ball,
        r##"stroke="#c0392b" stroke-width="2" stroke-dasharray="6 4""##,
    );

    let _ = writeln!(s, r##"<g id="tangent-points" fill="#1f5fbf">"##);
    let (c, r) = (&y.ball.center, y.ball.radius);
    for d in &y.tangent_directions {
        let v = d.as_slice();
        let (px, py) = view.px(c.x() + r * v[0], c.y() + r * v[1]);
        let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="3"/>"#, num(px), num(py));
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g id="ideal-points" fill="black">"#);
    for p in e.points() {
        let (px, py) = view.px(p.x(), p.y());
        let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="4"/>"#, num(px), num(py));
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    Ok(s)
}
