// Copyright 2026 mueller-sl4 Contributors
// SPDX-License-Identifier: Apache-2.0

//! Text emitters: JSON, CSV and single-curve SVG.

use std::fmt::Write as _;

use serde::Serialize;

pub const SVG_WIDTH: f64 = 640.0;
pub const SVG_HEIGHT: f64 = 480.0;

const LEFT: f64 = 70.0;
const RIGHT: f64 = 610.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 420.0;

#[derive(Debug, Clone, PartialEq)]
pub struct Axes<'a> {
    pub x_label: &'a str,
    pub y_label: &'a str,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EmitError {
    #[error("a curve needs at least 2 points inside the axes, got {0}")]
    TooFewPoints(usize),
    #[error("axis range ({0}, {1}) is empty or not finite")]
    BadRange(f64, f64),
    #[error("serialization failed: {0}")]
    Json(String),
}

/// Pretty JSON with a trailing newline.
pub fn emit_json<T: Serialize>(value: &T) -> Result<String, EmitError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| EmitError::Json(e.to_string()))
}

/// Float in CSV form: 17 significant digits, `.` separator.
pub fn csv_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn check_range((lo, hi): (f64, f64)) -> Result<(), EmitError> {
    if lo.is_finite() && hi.is_finite() && lo < hi {
        Ok(())
    } else {
        Err(EmitError::BadRange(lo, hi))
    }
}

/// One polyline on a fixed 640×480 viewBox. Points outside the axis ranges
/// are dropped.
pub fn emit_svg_curve(points: &[(f64, f64)], axes: &Axes) -> Result<String, EmitError> {
    check_range(axes.x_range)?;
    check_range(axes.y_range)?;
    let (x0, x1) = axes.x_range;
    let (y0, y1) = axes.y_range;
    let inside: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&(x, y)| (x0..=x1).contains(&x) && (y0..=y1).contains(&y))
        .collect();
    if inside.len() < 2 {
        return Err(EmitError::TooFewPoints(inside.len()));
    }
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * (RIGHT - LEFT);
    let sy = |y: f64| BOTTOM - (y - y0) / (y1 - y0) * (BOTTOM - TOP);

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect x="0" y="0" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<rect x="{LEFT}" y="{TOP}" width="{}" height="{}" fill="none" stroke="black" stroke-width="1"/>"#,
        RIGHT - LEFT,
        BOTTOM - TOP
    );
    if x0 < 0.0 && 0.0 < x1 {
        let x = sx(0.0);
        let _ = writeln!(svg, r##"<line x1="{x:.3}" y1="{TOP}" x2="{x:.3}" y2="{BOTTOM}" stroke="#999999" stroke-width="0.5"/>"##);
    }
    if y0 < 0.0 && 0.0 < y1 {
        let y = sy(0.0);
        let _ = writeln!(svg, r##"<line x1="{LEFT}" y1="{y:.3}" x2="{RIGHT}" y2="{y:.3}" stroke="#999999" stroke-width="0.5"/>"##);
    }
    let label = |svg: &mut String, x: f64, y: f64, anchor: &str, text: &str| {
        let _ = writeln!(
            svg,
            r#"<text x="{x:.3}" y="{y:.3}" font-family="sans-serif" font-size="12" text-anchor="{anchor}">{}</text>"#,
            escape(text)
        );
    };
    label(&mut svg, LEFT, BOTTOM + 18.0, "middle", &format!("{x0}"));
    label(&mut svg, RIGHT, BOTTOM + 18.0, "middle", &format!("{x1}"));
    label(&mut svg, LEFT - 6.0, BOTTOM + 4.0, "end", &format!("{y0}"));
    label(&mut svg, LEFT - 6.0, TOP + 4.0, "end", &format!("{y1}"));
    label(&mut svg, 0.5 * (LEFT + RIGHT), BOTTOM + 45.0, "middle", axes.x_label);
    label(&mut svg, 20.0, 0.5 * (TOP + BOTTOM), "middle", axes.y_label);

    let coords: Vec<String> =
        inside.iter().map(|&(x, y)| format!("{:.3},{:.3}", sx(x), sy(y))).collect();
    let _ = writeln!(
        svg,
        r#"<polyline fill="none" stroke="black" stroke-width="1.5" points="{}"/>"#,
        coords.join(" ")
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axes() -> Axes<'static> {
        Axes { x_label: "a", y_label: "x", x_range: (-1.0, 1.0), y_range: (-10.0, 10.0) }
    }

    #[test]
    fn two_points_one_polyline() {
        let svg = emit_svg_curve(&[(-0.5, -1.0), (0.5, 1.0)], &axes()).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 1);
        let pts = svg.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
        assert_eq!(pts.split(' ').count(), 2);
        assert!(svg.contains(r#"viewBox="0 0 640 480""#));
    }

    #[test]
    fn deterministic_bytes() {
        let pts: Vec<(f64, f64)> = (0..50).map(|k| (k as f64 / 50.0, (k as f64).sin())).collect();
        assert_eq!(emit_svg_curve(&pts, &axes()).unwrap(), emit_svg_curve(&pts, &axes()).unwrap());
    }

    #[test]
    fn clipping_and_errors() {
        let svg = emit_svg_curve(&[(0.0, 0.0), (0.1, 20.0), (0.2, 1.0)], &axes()).unwrap();
        let pts = svg.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
        assert_eq!(pts.split(' ').count(), 2);
        assert_eq!(emit_svg_curve(&[(0.0, 0.0)], &axes()), Err(EmitError::TooFewPoints(1)));
        let bad = Axes { x_range: (1.0, 1.0), ..axes() };
        assert!(matches!(emit_svg_curve(&[(0.0, 0.0), (1.0, 1.0)], &bad), Err(EmitError::BadRange(..))));
    }

    #[test]
    fn labels_are_escaped() {
        let a = Axes { x_label: "a<b", ..axes() };
        let svg = emit_svg_curve(&[(0.0, 0.0), (0.5, 1.0)], &a).unwrap();
        assert!(svg.contains("a&lt;b"));
    }

    #[test]
    fn csv_float_round_trips() {
        for v in [0.1, -1.0 / 3.0, 1e-300, 12345.678] {
            assert_eq!(csv_float(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(csv_float(1.0), "1.0000000000000000e0");
    }
}
