//! Helpers for driving the binary in tests.

use std::path::Path;
use std::process::{Command, Output};

pub const GOLDEN_MODEL_JSON: &str = r#"{
  "schema_version": "1",
  "mu0": [0.0],
  "mu1": [2.0],
  "sigma": [[1.0]],
  "p0": 0.5,
  "derived": { "alpha": [2.0], "beta": -2.0, "scale": 2.0, "delta": 2.0 }
}
"#;

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ldaroc"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 stdout")
}

pub fn assert_exit_code(args: &[&str], expected: i32) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(expected),
        "command {args:?}: stderr = {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8_lossy(&out.stderr).into_owned()
}

pub fn write_golden_model(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("golden.json");
    std::fs::write(&path, GOLDEN_MODEL_JSON).expect("write model");
    path
}

/// Minimal well-formedness check: every element properly nested and
/// closed. Enough for the SVG this tool emits (no comments, no CDATA,
/// no '>' inside attribute values).
pub fn assert_well_formed_xml(text: &str) {
    let mut stack: Vec<String> = Vec::new();
    let mut rest = text;
    while let Some(start) = rest.find('<') {
        let tail = &rest[start + 1..];
        let end = tail.find('>').expect("unterminated tag");
        let tag = &tail[..end];
        rest = &tail[end + 1..];
        if tag.starts_with('?') || tag.starts_with('!') {
            continue;
        }
        if let Some(name) = tag.strip_prefix('/') {
            let open = stack.pop().unwrap_or_else(|| panic!("stray closing tag {name}"));
            assert_eq!(open, name.trim(), "mismatched closing tag");
        } else if !tag.ends_with('/') {
            let name = tag.split_whitespace().next().expect("tag has a name");
            stack.push(name.to_string());
        }
    }
    assert!(stack.is_empty(), "unclosed tags remain: {stack:?}");
}

/// Parses a curve document and returns (theta, fpr, tpr) triples.
pub fn parse_curve_csv(text: &str) -> Vec<(f64, f64, f64)> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,fpr,tpr"));
    lines
        .filter(|l| !l.is_empty())
        .map(|l| {
            let mut f = l.split(',');
            let theta: f64 = f.next().unwrap().parse().unwrap();
            let fpr: f64 = f.next().unwrap().parse().unwrap();
            let tpr: f64 = f.next().unwrap().parse().unwrap();
            (theta, fpr, tpr)
        })
        .collect()
}

pub fn trapezoid(points: &[(f64, f64, f64)]) -> f64 {
    points
        .windows(2)
        .map(|w| (w[1].1 - w[0].1) * (w[0].2 + w[1].2) * 0.5)
        .sum()
}
