//! Minimal SVG plots: persistence-style mergegram diagrams and line charts.

use std::fmt::Write;

use crate::mergegram::Mergegram;

const SIZE: f64 = 420.0;
const MARGIN: f64 = 50.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn fmt_num(v: f64) -> String {
    let r = (v * 1000.0).round() / 1000.0;
    format!("{r}")
}

struct Frame {
    lo: f64,
    hi: f64,
    ylo: f64,
    yhi: f64,
}

impl Frame {
    fn x(&self, v: f64) -> f64 {
        MARGIN + (v - self.lo) / (self.hi - self.lo) * (SIZE - 2.0 * MARGIN)
    }

    fn y(&self, v: f64) -> f64 {
        SIZE - MARGIN - (v - self.ylo) / (self.yhi - self.ylo) * (SIZE - 2.0 * MARGIN)
    }
}

fn header(out: &mut String, title: &str) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}" font-family="sans-serif" font-size="11">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(out, r#"<text x="{}" y="20" text-anchor="middle" font-size="13">{}</text>"#, SIZE / 2.0, escape(title))
        .unwrap();
}

fn axes(out: &mut String, f: &Frame, xlabel: &str, ylabel: &str) {
    let (x0, x1, y0, y1) = (f.x(f.lo), f.x(f.hi), f.y(f.ylo), f.y(f.yhi));
    writeln!(out, r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>"#).unwrap();
    writeln!(out, r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>"#).unwrap();
    for (v, px) in [(f.lo, x0), (f.hi, x1)] {
        writeln!(out, r#"<text x="{px}" y="{}" text-anchor="middle">{}</text>"#, y0 + 15.0, fmt_num(v)).unwrap();
    }
    for (v, py) in [(f.ylo, y0), (f.yhi, y1)] {
        writeln!(out, r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#, x0 - 5.0, py + 4.0, fmt_num(v)).unwrap();
    }
    writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">{xlabel}</text>"#, (x0 + x1) / 2.0, SIZE - 12.0)
        .unwrap();
    writeln!(
        out,
        r#"<text x="14" y="{}" text-anchor="middle" transform="rotate(-90 14 {})">{ylabel}</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    )
    .unwrap();
}

/// Birth/death scatter. A point of multiplicity `k` gets `k − 1` rings; points
/// with infinite death sit on a dashed band above the finite range.
pub fn diagram_svg(m: &Mergegram, title: &str) -> String {
    let finite: Vec<f64> = m
        .points()
        .iter()
        .flat_map(|(i, _)| [i.birth, i.death])
        .filter(|v| v.is_finite())
        .collect();
    let lo = finite.iter().copied().fold(f64::INFINITY, f64::min).min(0.0);
    let mut hi = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max).max(lo + 1.0);
    hi += (hi - lo) * 0.05;
    let band = hi + (hi - lo) * 0.1;
    let f = Frame { lo, hi: band, ylo: lo, yhi: band };
    let mut out = String::new();
    header(&mut out, title);
    axes(&mut out, &f, "birth", "death");
    writeln!(
        out,
        r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#999"/>"##,
        f.x(lo),
        f.y(lo),
        f.x(hi),
        f.y(hi)
    )
    .unwrap();
    writeln!(
        out,
        r##"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="#999" stroke-dasharray="4 3"/><text x="{}" y="{}">inf</text>"##,
        f.x(lo),
        f.x(band),
        f.x(band) - 18.0,
        f.y(band) - 4.0,
        y = f.y(band)
    )
    .unwrap();
    for (i, k) in m.points() {
        let (cx, cy) = (f.x(i.birth), if i.is_infinite() { f.y(band) } else { f.y(i.death) });
        writeln!(out, r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="3" fill="{}"/>"#, COLORS[0]).unwrap();
        for ring in 1..*k {
            writeln!(
                out,
                r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="{}" fill="none" stroke="{}"/>"#,
                3 + 3 * ring,
                COLORS[0]
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Line chart of several `(x, y)` series sharing axes.
pub fn line_chart_svg(series: &[(&str, Vec<(f64, f64)>)], title: &str, xlabel: &str, ylabel: &str) -> String {
    let pts = || series.iter().flat_map(|s| s.1.iter().copied()).filter(|p| p.1.is_finite());
    let lo = pts().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = pts().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let yhi = pts().map(|p| p.1).fold(0.0, f64::max);
    let (lo, hi) = if lo.is_finite() { (lo, hi.max(lo + 1.0)) } else { (0.0, 1.0) };
    let f = Frame { lo, hi, ylo: 0.0, yhi: if yhi > 0.0 { yhi * 1.05 } else { 1.0 } };
    let mut out = String::new();
    header(&mut out, title);
    axes(&mut out, &f, xlabel, ylabel);
    for (k, (name, data)) in series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let path: Vec<String> = data
            .iter()
            .filter(|p| p.1.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", f.x(x), f.y(y)))
            .collect();
        writeln!(out, r#"<polyline points="{}" fill="none" stroke="{color}"/>"#, path.join(" ")).unwrap();
        for p in &path {
            let (x, y) = p.split_once(',').expect("formatted pair");
            writeln!(out, r#"<circle cx="{x}" cy="{y}" r="2.5" fill="{color}"/>"#).unwrap();
        }
        writeln!(
            out,
            r#"<text x="{}" y="{}" fill="{color}">{}</text>"#,
            SIZE - MARGIN - 90.0,
            MARGIN + 14.0 * k as f64,
            escape(name)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}
