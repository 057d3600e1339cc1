//! On-disk document formats: the JSON model document and the CSV curve
//! document.
//!
//! Floats are written in Rust's shortest round-trip form, so a saved
//! document reloads to bit-identical values. The model document stores
//! the derived coefficients alongside the parameters; loading recomputes
//! them and rejects the file if they disagree beyond 1e-9.

use crate::error::{CliError, CliResult};
use ldaroc::{LdaModel, Probability, RocCurve, RocPoint, SymMatrix};
use serde::{Deserialize, Serialize};
use std::path::Path;

pub const MODEL_SCHEMA_VERSION: &str = "1";

#[derive(Debug, Serialize, Deserialize)]
pub struct DerivedBlock {
    pub alpha: Vec<f64>,
    pub beta: f64,
    pub scale: f64,
    pub delta: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ModelDocument {
    pub schema_version: String,
    pub mu0: Vec<f64>,
    pub mu1: Vec<f64>,
    pub sigma: Vec<Vec<f64>>,
    pub p0: f64,
    pub derived: DerivedBlock,
}

impl ModelDocument {
    pub fn from_model(model: &LdaModel) -> Self {
        ModelDocument {
            schema_version: MODEL_SCHEMA_VERSION.to_string(),
            mu0: model.class0().mean().to_vec(),
            mu1: model.class1().mean().to_vec(),
            sigma: model.class0().cov().rows(),
            p0: model.prior0().value(),
            derived: DerivedBlock {
                alpha: model.alpha().to_vec(),
                beta: model.beta(),
                scale: model.scale(),
                delta: model.delta(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("model document serializes");
        s.push('\n');
        s
    }

    /// Rebuilds the model and checks the stored derived block against the
    /// recomputed one.
    pub fn into_model(self) -> CliResult<LdaModel> {
        if self.schema_version != MODEL_SCHEMA_VERSION {
            return Err(CliError::parse(format!(
                "unsupported model schema_version {:?} (expected {:?})",
                self.schema_version, MODEL_SCHEMA_VERSION
            )));
        }
        let sigma = SymMatrix::from_rows(&self.sigma).map_err(CliError::from_model_input)?;
        let model = LdaModel::from_params(self.mu0, self.mu1, sigma, self.p0)
            .map_err(CliError::from_model_input)?;
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * b.abs().max(1.0);
        let alpha_ok = model.alpha().len() == self.derived.alpha.len()
            && model.alpha().iter().zip(&self.derived.alpha).all(|(a, b)| close(*a, *b));
        if !(alpha_ok
            && close(model.beta(), self.derived.beta)
            && close(model.scale(), self.derived.scale)
            && close(model.delta(), self.derived.delta))
        {
            return Err(CliError::parse(
                "model document derived block does not match its parameters".to_string(),
            ));
        }
        Ok(model)
    }
}

pub fn save_model(model: &LdaModel, path: &Path) -> CliResult<()> {
    let doc = ModelDocument::from_model(model);
    std::fs::write(path, doc.to_json()).map_err(|e| CliError::io(path, e))
}

pub fn load_model(path: &Path) -> CliResult<LdaModel> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let doc: ModelDocument = serde_json::from_str(&text)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    doc.into_model()
}

/// theta,fpr,tpr rows sorted by FPR ascending; the limit rows carry the
/// literal thetas `inf` and `-inf`.
pub fn curve_to_csv(curve: &RocCurve) -> String {
    let mut out = String::from("theta,fpr,tpr\n");
    for p in curve.points() {
        out.push_str(&format!("{},{},{}\n", p.theta, p.fpr.value(), p.tpr.value()));
    }
    out
}

pub fn write_curve(curve: &RocCurve, path: &Path) -> CliResult<()> {
    std::fs::write(path, curve_to_csv(curve)).map_err(|e| CliError::io(path, e))
}

pub fn read_curve(path: &Path) -> CliResult<RocCurve> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut lines = text.lines();
    match lines.next() {
        Some("theta,fpr,tpr") => {}
        other => {
            return Err(CliError::parse(format!(
                "{}: expected header 'theta,fpr,tpr', found {:?}",
                path.display(),
                other.unwrap_or("")
            )))
        }
    }
    let mut points = Vec::new();
    for (i, line) in lines.enumerate() {
        let row = i + 2;
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let mut next_field = |name: &str| {
            fields.next().ok_or_else(|| {
                CliError::parse(format!("{}: row {row}: missing {name}", path.display()))
            })
        };
        let theta: f64 = parse_cell(next_field("theta")?, path, row, "theta")?;
        let fpr: f64 = parse_cell(next_field("fpr")?, path, row, "fpr")?;
        let tpr: f64 = parse_cell(next_field("tpr")?, path, row, "tpr")?;
        let as_probability = |v: f64, name: &str| {
            Probability::new(v).map_err(|e| {
                CliError::parse(format!("{}: row {row}: {name}: {e}", path.display()))
            })
        };
        points.push(RocPoint {
            theta,
            fpr: as_probability(fpr, "fpr")?,
            tpr: as_probability(tpr, "tpr")?,
        });
    }
    RocCurve::new(points)
        .map_err(|e| CliError::parse(format!("{}: invalid curve: {e}", path.display())))
}

fn parse_cell(cell: &str, path: &Path, row: usize, name: &str) -> CliResult<f64> {
    cell.trim().parse().map_err(|_| {
        CliError::parse(format!(
            "{}: row {row}: cannot parse {name} value {cell:?}",
            path.display()
        ))
    })
}
