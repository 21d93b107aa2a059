//! Minimal static SVG line plots for envelope traces.

use holofill::ConeEnvelope;

const W: f64 = 720.0;
const H: f64 = 480.0;
const MARGIN: f64 = 60.0;

fn polyline(points: &[(f64, f64)], color: &str) -> String {
    let coords: Vec<String> = points
        .iter()
        .map(|(x, y)| format!("{x:.2},{y:.2}"))
        .collect();
    format!(
        "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
        coords.join(" ")
    )
}

/// Plots the core-length envelope (lower and upper curves) against t.
pub fn envelope_plot(env: &ConeEnvelope<f64>) -> String {
    let t_max = env.rows.last().map(|r| r.t).unwrap_or(1.0).max(1e-300);
    let y_max = env
        .rows
        .iter()
        .map(|r| r.l.hi())
        .fold(0.0f64, f64::max)
        .max(1e-300);
    let sx = |t: f64| MARGIN + (W - 2.0 * MARGIN) * t / t_max;
    let sy = |v: f64| H - MARGIN - (H - 2.0 * MARGIN) * v / y_max;

    let lower: Vec<(f64, f64)> = env.rows.iter().map(|r| (sx(r.t), sy(r.l.lo()))).collect();
    let upper: Vec<(f64, f64)> = env.rows.iter().map(|r| (sx(r.t), sy(r.l.hi()))).collect();

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n"
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    out.push_str(&format!(
        "<line x1=\"{MARGIN}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        H - MARGIN,
        W - MARGIN,
        H - MARGIN
    ));
    out.push_str(&format!(
        "<line x1=\"{MARGIN}\" y1=\"{MARGIN}\" x2=\"{MARGIN}\" y2=\"{}\" stroke=\"black\"/>\n",
        H - MARGIN
    ));
    out.push_str(&polyline(&lower, "#1f77b4"));
    out.push_str(&polyline(&upper, "#d62728"));
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"14\">t</text>\n",
        W - MARGIN + 12.0,
        H - MARGIN + 4.0
    ));
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"14\">l(t) bounds</text>\n",
        MARGIN,
        MARGIN - 12.0
    ));
    out.push_str("</svg>\n");
    out
}
