//! Minimal SVG line plots of table columns.

use std::fmt::Write as _;

use crate::cli::Table;

const PANEL_W: f64 = 360.0;
const PANEL_H: f64 = 180.0;
const MARGIN: f64 = 36.0;
const COLS: usize = 3;

/// One panel per non-abscissa column, laid out on a grid.
pub fn render(table: &Table) -> String {
    let xs: Vec<f64> = table.rows.iter().map(|r| r[0]).collect();
    let n_panels = table.header.len().saturating_sub(1);
    let n_rows = n_panels.div_ceil(COLS).max(1);
    let width = COLS as f64 * (PANEL_W + MARGIN) + MARGIN;
    let height = n_rows as f64 * (PANEL_H + MARGIN) + MARGIN;
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="sans-serif" font-size="11">"#).unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    for p in 0..n_panels {
        let ox = MARGIN + (p % COLS) as f64 * (PANEL_W + MARGIN);
        let oy = MARGIN + (p / COLS) as f64 * (PANEL_H + MARGIN);
        let ys: Vec<f64> = table.rows.iter().map(|r| r[p + 1]).collect();
        panel(&mut s, ox, oy, &table.header[p + 1], &xs, &ys);
    }
    s.push_str("</svg>\n");
    s
}

fn bounds(v: &[f64]) -> (f64, f64) {
    let (lo, hi) = v.iter().filter(|x| x.is_finite()).fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-300 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn panel(s: &mut String, ox: f64, oy: f64, title: &str, xs: &[f64], ys: &[f64]) {
    let (x0, x1) = bounds(xs);
    let (y0, y1) = bounds(ys);
    writeln!(s, r#"<rect x="{ox}" y="{oy}" width="{PANEL_W}" height="{PANEL_H}" fill="none" stroke="gray"/>"#).unwrap();
    writeln!(s, r#"<text x="{}" y="{}">{title}</text>"#, ox + 4.0, oy - 4.0).unwrap();
    writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{y1:.3e}</text>"#, ox + PANEL_W - 4.0, oy - 4.0).unwrap();
    writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{y0:.3e}</text>"#, ox + PANEL_W - 4.0, oy + PANEL_H + 12.0).unwrap();
    let points: Vec<String> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .map(|(&x, &y)| {
            let px = ox + (x - x0) / (x1 - x0) * PANEL_W;
            let py = oy + PANEL_H - (y - y0) / (y1 - y0) * PANEL_H;
            format!("{px:.2},{py:.2}")
        })
        .collect();
    writeln!(s, r#"<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{}"/>"#, points.join(" ")).unwrap();
}
