//! Deterministic SVG rendering of a visibility-vs-kappa sweep CSV.
//!
//! Input is a CSV in the RegimeReport row format
//! (`kappa,r,visibility,purity,case,fuzziness`); output is a
//! self-contained SVG with the visibility curve on a log-x axis. All
//! coordinates are printed with fixed precision, so the same CSV always
//! yields byte-identical SVG.

use crate::error::{Error, Result};
use crate::observables::RegimeReport;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 60.0;

/// Parse a sweep CSV and render the visibility-vs-kappa curve as SVG.
pub fn emit_plot(csv: &str) -> Result<String> {
    let mut lines = csv.lines();
    let header = lines.next().unwrap_or("");
    let columns: Vec<&str> = header.trim().split(',').collect();
    let kappa_idx = columns.iter().position(|c| *c == "kappa");
    let vis_idx = columns.iter().position(|c| *c == "visibility");
    let (kappa_idx, vis_idx) = match (kappa_idx, vis_idx) {
        (Some(k), Some(v)) => (k, v),
        _ => {
            return Err(Error::config(format!(
                "missing columns; expected header: {}",
                RegimeReport::CSV_HEADER
            )))
        }
    };

    let mut points: Vec<(f64, f64)> = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() <= kappa_idx.max(vis_idx) {
            return Err(Error::config(format!(
                "line {}: too few fields",
                lineno + 2
            )));
        }
        let parse = |s: &str| -> Result<f64> {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::config(format!("line {}: {e}", lineno + 2)))
        };
        let kappa = parse(fields[kappa_idx])?;
        if kappa <= 0.0 {
            return Err(Error::config(format!(
                "line {}: kappa must be positive for the log axis",
                lineno + 2
            )));
        }
        points.push((kappa, parse(fields[vis_idx])?));
    }
    if points.is_empty() {
        return Err(Error::config("no data rows"));
    }

    let log_min = points.iter().map(|p| p.0.log10()).fold(f64::INFINITY, f64::min);
    let log_max = points
        .iter()
        .map(|p| p.0.log10())
        .fold(f64::NEG_INFINITY, f64::max);
    let span = if log_max > log_min { log_max - log_min } else { 1.0 };

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let x_of = |kappa: f64| MARGIN_LEFT + (kappa.log10() - log_min) / span * plot_w;
    let y_of = |vis: f64| MARGIN_TOP + (1.0 - vis.clamp(0.0, 1.0)) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // axes
    svg.push_str(&format!(
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
        MARGIN_LEFT,
        HEIGHT - MARGIN_BOTTOM,
        WIDTH - MARGIN_RIGHT,
        HEIGHT - MARGIN_BOTTOM
    ));
    svg.push_str(&format!(
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
        MARGIN_LEFT, MARGIN_TOP, MARGIN_LEFT, HEIGHT - MARGIN_BOTTOM
    ));

    // x ticks at integer decades
    let first_decade = log_min.ceil() as i64;
    let last_decade = log_max.floor() as i64;
    for decade in first_decade..=last_decade {
        let x = x_of(10f64.powi(decade as i32));
        svg.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
            HEIGHT - MARGIN_BOTTOM,
            HEIGHT - MARGIN_BOTTOM + 6.0
        ));
        svg.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"12\">1e{decade}</text>\n",
            HEIGHT - MARGIN_BOTTOM + 22.0
        ));
    }
    // y ticks
    for i in 0..=4 {
        let vis = i as f64 / 4.0;
        let y = y_of(vis);
        svg.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"black\"/>\n",
            MARGIN_LEFT - 6.0,
            MARGIN_LEFT
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-size=\"12\">{vis:.2}</text>\n",
            MARGIN_LEFT - 10.0,
            y + 4.0
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"14\">kappa = dp / k</text>\n",
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 12.0
    ));
    svg.push_str(&format!(
        "<text x=\"18\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 {:.2})\">visibility</text>\n",
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0
    ));

    let vertices: Vec<String> = points
        .iter()
        .map(|&(kappa, vis)| format!("{:.3},{:.3}", x_of(kappa), y_of(vis)))
        .collect();
    svg.push_str(&format!(
        "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"2\" points=\"{}\"/>\n",
        vertices.join(" ")
    ));
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sweep_csv(points: usize) -> String {
        let mut csv = String::from(RegimeReport::CSV_HEADER);
        csv.push('\n');
        for i in 0..points {
            let kappa = 10f64.powf(-2.0 + 4.0 * i as f64 / (points as f64 - 1.0));
            let vis = (-1.0 / (2.0 * kappa * kappa)).exp();
            csv.push_str(&format!(
                "{kappa:.16e},{vis:.16e},{vis:.16e},0.9,CaseI,Regular\n"
            ));
        }
        csv
    }

    #[test]
    fn polyline_has_one_vertex_per_row() {
        let svg = emit_plot(&sweep_csv(101)).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 1);
        let points_attr = svg
            .split("points=\"")
            .nth(1)
            .unwrap()
            .split('"')
            .next()
            .unwrap();
        assert_eq!(points_attr.split(' ').count(), 101);
    }

    #[test]
    fn header_only_is_rejected() {
        let csv = format!("{}\n", RegimeReport::CSV_HEADER);
        match emit_plot(&csv) {
            Err(Error::Config(msg)) => assert!(msg.contains("no data rows")),
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn missing_columns_reported() {
        match emit_plot("a,b,c\n1,2,3\n") {
            Err(Error::Config(msg)) => assert!(msg.contains(RegimeReport::CSV_HEADER)),
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn deterministic_bytes() {
        let csv = sweep_csv(33);
        assert_eq!(emit_plot(&csv).unwrap(), emit_plot(&csv).unwrap());
    }
}
