//! Self-contained SVG reports: a box plot for bake-offs and a two-panel
//! line plot for robustness curves. Each data series is one
//! `<g class="series">` element.

use std::fmt::Write as _;

use crate::sim::{RobustnessRow, SimSummary};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 60.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn header(out: &mut String, width: f64, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{HEIGHT}" viewBox="0 0 {width} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="{width}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        width / 2.0,
        escape(title)
    );
}

struct Scale {
    lo: f64,
    hi: f64,
    px_lo: f64,
    px_hi: f64,
}

impl Scale {
    fn new(lo: f64, hi: f64, px_lo: f64, px_hi: f64) -> Self {
        let (lo, hi) = if hi > lo { (lo, hi) } else { (lo - 0.5, hi + 0.5) };
        Self { lo, hi, px_lo, px_hi }
    }

    fn map(&self, v: f64) -> f64 {
        self.px_lo + (v - self.lo) / (self.hi - self.lo) * (self.px_hi - self.px_lo)
    }
}

fn y_axis(out: &mut String, scale: &Scale, x: f64, label: &str) {
    let _ = writeln!(out, r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="black"/>"#, scale.px_lo, scale.px_hi);
    for i in 0..=4 {
        let v = scale.lo + (scale.hi - scale.lo) * i as f64 / 4.0;
        let y = scale.map(v);
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{:.1}" text-anchor="end">{}</text>"#,
            x - 4.0,
            y + 4.0,
            super::table::format_human(v)
        );
    }
    let _ = writeln!(
        out,
        r#"<text transform="translate({},{}) rotate(-90)" text-anchor="middle">{}</text>"#,
        x - 48.0,
        (scale.px_lo + scale.px_hi) / 2.0,
        escape(label)
    );
}

/// Whiskers at the 1st/99th percentiles, box at the quartiles, line at the
/// median; the intercentile range is printed under each box.
pub fn box_plot(series: &[(&str, SimSummary)], truth: Option<f64>) -> String {
    let mut out = String::new();
    header(&mut out, WIDTH, "Simulated distribution of the ratio estimate");
    let lo = series.iter().map(|s| s.1.q01).chain(truth).fold(f64::INFINITY, f64::min);
    let hi = series.iter().map(|s| s.1.q99).chain(truth).fold(f64::NEG_INFINITY, f64::max);
    let pad = (hi - lo).abs() * 0.05;
    let ys = Scale::new(lo - pad, hi + pad, HEIGHT - MARGIN, MARGIN);
    y_axis(&mut out, &ys, MARGIN, "theta estimate");

    let slot = (WIDTH - 2.0 * MARGIN) / series.len().max(1) as f64;
    for (i, (name, s)) in series.iter().enumerate() {
        let cx = MARGIN + slot * (i as f64 + 0.5);
        let half = slot * 0.2;
        let _ = writeln!(out, r#"<g class="series" data-name="{}">"#, escape(name));
        let _ = writeln!(
            out,
            r#"<line x1="{cx:.1}" y1="{:.1}" x2="{cx:.1}" y2="{:.1}" stroke="black"/>"#,
            ys.map(s.q01),
            ys.map(s.q99)
        );
        let _ = writeln!(
            out,
            r#"<rect x="{:.1}" y="{:.1}" width="{:.1}" height="{:.1}" fill="lightsteelblue" stroke="black"/>"#,
            cx - half,
            ys.map(s.q75),
            2.0 * half,
            (ys.map(s.q25) - ys.map(s.q75)).max(0.5)
        );
        let _ = writeln!(
            out,
            r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="black" stroke-width="2"/>"#,
            cx - half,
            ys.map(s.median),
            cx + half,
            ys.map(s.median)
        );
        let _ = writeln!(
            out,
            r#"<text x="{cx:.1}" y="{}" text-anchor="middle">{}</text>"#,
            HEIGHT - MARGIN + 18.0,
            escape(name)
        );
        let _ = writeln!(
            out,
            r#"<text x="{cx:.1}" y="{}" text-anchor="middle">error {}</text>"#,
            HEIGHT - MARGIN + 34.0,
            super::table::format_human(s.intercentile_range)
        );
        out.push_str("</g>\n");
    }
    if let Some(t) = truth {
        let _ = writeln!(
            out,
            r#"<line class="reference" x1="{MARGIN}" y1="{y:.1}" x2="{}" y2="{y:.1}" stroke="green" stroke-dasharray="4 3"/>"#,
            WIDTH - MARGIN,
            y = ys.map(t)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn polyline(out: &mut String, name: &str, colour: &str, points: impl Iterator<Item = (f64, f64)>) {
    let pts: Vec<String> = points.map(|(x, y)| format!("{x:.1},{y:.1}")).collect();
    let _ = writeln!(out, r#"<g class="series" data-name="{}">"#, escape(name));
    let _ = writeln!(out, r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#, pts.join(" "));
    out.push_str("</g>\n");
}

/// Left panel: error percentage over the minimum against log θ₀. Right
/// panel: ρ* against log θ₀.
pub fn robustness_plot(rows: &[RobustnessRow], theta_true: f64) -> String {
    let panel = WIDTH;
    let total = 2.0 * panel;
    let mut out = String::new();
    header(&mut out, total, "Design error versus prior guess");

    let lx = |r: &RobustnessRow| r.theta0.ln();
    let xlo = rows.iter().map(lx).fold(f64::INFINITY, f64::min);
    let xhi = rows.iter().map(lx).fold(f64::NEG_INFINITY, f64::max);

    let panels: [(&str, &str, f64, fn(&RobustnessRow) -> f64); 2] =
        [("error_pct", "% error above minimum", 0.0, |r| r.error_pct), ("rho_star", "rho*", panel, |r| r.rho_star)];
    for (name, label, offset, get) in panels {
        let xs = Scale::new(xlo, xhi, offset + MARGIN, offset + panel - MARGIN / 2.0);
        let lo = rows.iter().map(get).fold(f64::INFINITY, f64::min).min(0.0);
        let hi = rows.iter().map(get).fold(f64::NEG_INFINITY, f64::max);
        let ys = Scale::new(lo, hi + (hi - lo).abs() * 0.05, HEIGHT - MARGIN, MARGIN);
        y_axis(&mut out, &ys, offset + MARGIN, label);
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="black"/>"#,
            offset + MARGIN,
            offset + panel - MARGIN / 2.0,
            y = HEIGHT - MARGIN
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle">theta0 (log scale)</text>"#,
            offset + panel / 2.0,
            HEIGHT - MARGIN + 36.0
        );
        for v in [rows.first().map(|r| r.theta0), rows.last().map(|r| r.theta0)].into_iter().flatten() {
            let _ = writeln!(
                out,
                r#"<text x="{:.1}" y="{}" text-anchor="middle">{}</text>"#,
                xs.map(v.ln()),
                HEIGHT - MARGIN + 16.0,
                super::table::format_human(v)
            );
        }
        if theta_true > 0.0 && (xlo..=xhi).contains(&theta_true.ln()) {
            let x = xs.map(theta_true.ln());
            let _ = writeln!(
                out,
                r#"<line class="reference" x1="{x:.1}" y1="{MARGIN}" x2="{x:.1}" y2="{}" stroke="green" stroke-dasharray="4 3"/>"#,
                HEIGHT - MARGIN
            );
        }
        polyline(&mut out, name, "steelblue", rows.iter().map(|r| (xs.map(lx(r)), ys.map(get(r)))));
    }
    out.push_str("</svg>\n");
    out
}
