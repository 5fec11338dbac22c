//! Curve serialization: CSV, JSON and a self-contained SVG chart.

use std::fmt::Write as _;

use noncompact_core::{ModulusCurve, ModulusPoint};
use serde::Serialize;

#[derive(Serialize)]
struct CsvRow {
    epsilon: f64,
    analytic: Option<f64>,
    numeric: Option<f64>,
    witness: Option<String>,
}

/// CSV with header `epsilon,analytic,numeric,witness`. Missing values are
/// empty cells; the witness is its canonical set expression.
pub fn curve_to_csv(curve: &ModulusCurve) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for pt in &curve.grid {
        w.serialize(CsvRow {
            epsilon: pt.epsilon,
            analytic: pt.analytic_value,
            numeric: pt.numeric_estimate,
            witness: pt.witness.as_ref().map(ToString::to_string),
        })
        .expect("writing to memory");
    }
    if curve.grid.is_empty() {
        w.write_record(["epsilon", "analytic", "numeric", "witness"])
            .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
}

pub fn curve_to_json(curve: &ModulusCurve) -> String {
    serde_json::to_string_pretty(curve).expect("curve serializes")
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const PAD_LEFT: f64 = 60.0;
const PAD_RIGHT: f64 = 150.0;
const PAD_Y: f64 = 40.0;

/// Line chart of the analytic and numeric series against epsilon.
pub fn curve_to_svg(curve: &ModulusCurve) -> String {
    let series = |f: fn(&ModulusPoint) -> Option<f64>| -> Vec<(f64, f64)> {
        curve
            .grid
            .iter()
            .filter_map(|pt| Some((pt.epsilon, f(pt)?)))
            .collect()
    };
    let analytic = series(|pt| pt.analytic_value);
    let numeric = series(|pt| pt.numeric_estimate);

    let xs = curve.grid.iter().map(|pt| pt.epsilon);
    let x_min = xs.clone().fold(f64::INFINITY, f64::min).min(0.0);
    let x_max = xs.fold(f64::NEG_INFINITY, f64::max).max(x_min + 1e-9);
    let y_max = analytic
        .iter()
        .chain(&numeric)
        .map(|&(_, y)| y)
        .fold(0.0, f64::max)
        .max(1e-9)
        * 1.05;
    let plot_w = WIDTH - PAD_LEFT - PAD_RIGHT;
    let plot_h = HEIGHT - 2.0 * PAD_Y;
    let sx = |x: f64| PAD_LEFT + (x - x_min) / (x_max - x_min) * plot_w;
    let sy = |y: f64| HEIGHT - PAD_Y - y / y_max * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="20" text-anchor="middle">{} modulus, p = {}{}</text>"#,
        PAD_LEFT + plot_w / 2.0,
        curve.kind,
        curve.space.exponent(),
        if curve.restricted_minimal {
            " (minimal sets)"
        } else {
            ""
        }
    );
    // Axes with five ticks each.
    let (x0, y0) = (PAD_LEFT, HEIGHT - PAD_Y);
    let _ = writeln!(
        s,
        r#"<path d="M{x0},{PAD_Y} V{y0} H{}" fill="none" stroke="black"/>"#,
        PAD_LEFT + plot_w
    );
    for i in 0..=4 {
        let t = i as f64 / 4.0;
        let (x, y) = (x_min + t * (x_max - x_min), t * y_max);
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{x:.2}</text>"#,
            sx(x),
            y0 + 16.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{y:.3}</text>"#,
            x0 - 6.0,
            sy(y) + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">epsilon</text>"#,
        PAD_LEFT + plot_w / 2.0,
        HEIGHT - 6.0
    );

    let mut legend_y = PAD_Y + 10.0;
    for (name, pts, style) in [
        ("analytic", &analytic, r#"stroke="steelblue""#),
        (
            "numeric",
            &numeric,
            r#"stroke="firebrick" stroke-dasharray="6 3""#,
        ),
    ] {
        if pts.is_empty() {
            continue;
        }
        let path: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline class="{name}" points="{}" fill="none" stroke-width="2" {style}/>"#,
            path.join(" ")
        );
        let lx = WIDTH - PAD_RIGHT + 15.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx}" y1="{legend_y}" x2="{}" y2="{legend_y}" stroke-width="2" {style}/><text x="{}" y="{}">{name}</text>"#,
            lx + 25.0,
            lx + 32.0,
            legend_y + 4.0
        );
        legend_y += 20.0;
    }
    s.push_str("</svg>\n");
    s
}
