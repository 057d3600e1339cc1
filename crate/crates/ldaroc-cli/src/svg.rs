//! Self-contained SVG emission for ROC curves: unit-square axes, the
//! chance diagonal, the curve polyline, and an optional marker at the
//! Youden point. No timestamps or version stamps — identical input gives
//! identical bytes.

use ldaroc::RocCurve;
use std::fmt::Write;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 48.0;
const PLOT: f64 = SIZE - 2.0 * MARGIN;

fn x_of(fpr: f64) -> f64 {
    MARGIN + fpr * PLOT
}

fn y_of(tpr: f64) -> f64 {
    MARGIN + (1.0 - tpr) * PLOT
}

pub fn curve_svg(curve: &RocCurve, youden: Option<(f64, f64)>) -> String {
    let mut polyline = String::new();
    for p in curve.points() {
        if !polyline.is_empty() {
            polyline.push(' ');
        }
        write!(polyline, "{:.3},{:.3}", x_of(p.fpr.value()), y_of(p.tpr.value()))
            .expect("write to string");
    }

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(svg, r#"  <rect width="{SIZE}" height="{SIZE}" fill="white"/>"#).unwrap();
    writeln!(
        svg,
        r#"  <rect x="{MARGIN}" y="{MARGIN}" width="{PLOT}" height="{PLOT}" fill="none" stroke="black" stroke-width="1"/>"#
    )
    .unwrap();
    writeln!(
        svg,
        r#"  <line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="gray" stroke-width="1" stroke-dasharray="6,4"/>"#,
        x_of(0.0),
        y_of(0.0),
        x_of(1.0),
        y_of(1.0)
    )
    .unwrap();
    writeln!(
        svg,
        r#"  <polyline points="{polyline}" fill="none" stroke="crimson" stroke-width="2"/>"#
    )
    .unwrap();
    if let Some((fpr, tpr)) = youden {
        writeln!(
            svg,
            r#"  <circle cx="{:.3}" cy="{:.3}" r="5" fill="none" stroke="navy" stroke-width="2"/>"#,
            x_of(fpr),
            y_of(tpr)
        )
        .unwrap();
    }
    for (value, anchor) in [(0.0, "0"), (0.5, "0.5"), (1.0, "1")] {
        writeln!(
            svg,
            r#"  <text x="{:.3}" y="{:.3}" font-size="12" text-anchor="middle">{anchor}</text>"#,
            x_of(value),
            SIZE - MARGIN + 18.0
        )
        .unwrap();
        writeln!(
            svg,
            r#"  <text x="{:.3}" y="{:.3}" font-size="12" text-anchor="end">{anchor}</text>"#,
            MARGIN - 8.0,
            y_of(value) + 4.0
        )
        .unwrap();
    }
    writeln!(
        svg,
        r#"  <text x="{:.3}" y="{:.3}" font-size="14" text-anchor="middle">FPR</text>"#,
        SIZE / 2.0,
        SIZE - 8.0
    )
    .unwrap();
    writeln!(
        svg,
        r#"  <text x="{:.3}" y="{:.3}" font-size="14" text-anchor="middle" transform="rotate(-90 14 {:.3})">TPR</text>"#,
        14.0,
        SIZE / 2.0,
        SIZE / 2.0
    )
    .unwrap();
    svg.push_str("</svg>\n");
    svg
}
