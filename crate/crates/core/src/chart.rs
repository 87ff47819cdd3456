//! Minimal SVG line chart of X against time.

use std::fmt::Write as _;

use crate::report::fmt_short;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 72.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 56.0;
const TICKS: usize = 5;

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn padded_range(values: impl Iterator<Item = f64>, pad: f64) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if hi - lo < f64::EPSILON * hi.abs().max(1.0) {
        (lo - pad, hi + pad)
    } else {
        (lo, hi)
    }
}

/// Renders `(t_hours, x)` points as a single polyline with markers.
pub fn render_svg(title: &str, points: &[(f64, f64)]) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"  <rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"  <text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let (x_axis, y_axis) = (HEIGHT - BOTTOM, LEFT);
    let _ = writeln!(svg, r#"  <line x1="{LEFT}" y1="{x_axis}" x2="{}" y2="{x_axis}" stroke="black"/>"#, WIDTH - RIGHT);
    let _ = writeln!(svg, r#"  <line x1="{y_axis}" y1="{TOP}" x2="{y_axis}" y2="{x_axis}" stroke="black"/>"#);
    let _ = writeln!(
        svg,
        r#"  <text x="{}" y="{}" text-anchor="middle">time (hours)</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 16.0
    );
    let _ = writeln!(
        svg,
        r#"  <text x="18" y="{0}" text-anchor="middle" transform="rotate(-90 18 {0})">Degree of Excellence (%)</text>"#,
        TOP + plot_h / 2.0
    );

    if points.is_empty() {
        svg.push_str("</svg>\n");
        return svg;
    }

    let (t_lo, t_hi) = padded_range(points.iter().map(|p| p.0), 0.5);
    let (x_lo, x_hi) = padded_range(points.iter().map(|p| p.1), 1.0);
    let sx = |t: f64| LEFT + (t - t_lo) / (t_hi - t_lo) * plot_w;
    let sy = |x: f64| TOP + (x_hi - x) / (x_hi - x_lo) * plot_h;

    for i in 0..=TICKS {
        let frac = i as f64 / TICKS as f64;
        let t = t_lo + frac * (t_hi - t_lo);
        let x = x_lo + frac * (x_hi - x_lo);
        let (px, py) = (sx(t), sy(x));
        let _ = writeln!(
            svg,
            r#"  <line x1="{px:.2}" y1="{x_axis}" x2="{px:.2}" y2="{}" stroke="black"/><text x="{px:.2}" y="{}" text-anchor="middle">{}</text>"#,
            x_axis + 5.0,
            x_axis + 18.0,
            fmt_short((t * 100.0).round() / 100.0)
        );
        let _ = writeln!(
            svg,
            r#"  <line x1="{}" y1="{py:.2}" x2="{y_axis}" y2="{py:.2}" stroke="black"/><text x="{}" y="{:.2}" text-anchor="end">{}</text>"#,
            y_axis - 5.0,
            y_axis - 8.0,
            py + 4.0,
            crate::report::fmt_2dp(x)
        );
    }

    let coords: Vec<String> = points.iter().map(|&(t, x)| format!("{:.2},{:.2}", sx(t), sy(x))).collect();
    let _ =
        writeln!(svg, r#"  <polyline fill="none" stroke="steelblue" stroke-width="2" points="{}"/>"#, coords.join(" "));
    for &(t, x) in points {
        let _ = writeln!(
            svg,
            r#"  <circle cx="{:.2}" cy="{:.2}" r="3" fill="steelblue"><title>t = {} h, X = {}</title></circle>"#,
            sx(t),
            sy(x),
            fmt_short(t),
            crate::report::fmt_2dp(x)
        );
    }
    svg.push_str("</svg>\n");
    svg
}
