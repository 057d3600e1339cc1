//! `ldaroc` — exact ROC analysis for linear discriminants under the
//! shared-covariance Gaussian model, from the command line.
//!
//! Verbs: fit, roc, auc, youden, confusion, report, simulate, plot.
//! Exit codes: 0 ok, 2 usage, 3 parse, 4 numerical, 5 I/O.

mod docs;
mod error;
mod svg;

use clap::{Parser, Subcommand};
use error::{CliError, CliResult};
use ldaroc::{
    mc_confusion, simulate_dataset, trapezoid_auc, ConfusionDistribution, LabeledDataset,
    LdaModel, QuadratureRule, YoudenResult,
};
use serde::Serialize;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "ldaroc", version, about = "Exact ROC curves, AUC, confusion distributions, and Youden thresholds for two-class Gaussian discriminants, with Monte Carlo verification")]
struct Cli {
    /// Seed for the Monte Carlo verbs (report --samples, simulate)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Emit JSON instead of human-readable text
    #[arg(long, global = true)]
    json: bool,

    /// Output file; required by fit/roc/simulate/plot, optional copy of
    /// the printed payload otherwise
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit a model from a labeled CSV file and write it as JSON
    Fit {
        /// CSV file with a header row; all non-label columns are features
        #[arg(long)]
        input: PathBuf,
        /// Name of the 0/1 label column
        #[arg(long, default_value = "label")]
        label_column: String,
    },
    /// Sample the analytic ROC curve into a CSV curve document
    Roc {
        #[arg(long)]
        model: PathBuf,
        /// Number of interior curve points
        #[arg(long, default_value_t = 256)]
        points: usize,
    },
    /// Print the area under the analytic ROC curve
    Auc {
        #[arg(long)]
        model: PathBuf,
    },
    /// Print the Youden-optimal operating point
    Youden {
        #[arg(long)]
        model: PathBuf,
    },
    /// Print the confusion distribution at a threshold
    Confusion {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
    },
    /// Analytic report (confusion, Youden, AUC) with optional Monte
    /// Carlo verification
    Report {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        /// Monte Carlo draws; 0 means analytic only
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Draw labeled feature rows from a model into a CSV file
    Simulate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        count: usize,
    },
    /// Render a curve document as a self-contained SVG figure
    Plot {
        #[arg(long)]
        curve: PathBuf,
        /// FPR of a marker for the Youden point (requires --youden-tpr)
        #[arg(long)]
        youden_fpr: Option<f64>,
        /// TPR of a marker for the Youden point (requires --youden-fpr)
        #[arg(long)]
        youden_tpr: Option<f64>,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {}", e.message);
        std::process::exit(e.exit_code);
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Fit { ref input, ref label_column } => {
            let output = required_output(&cli.output, "fit")?;
            cmd_fit(input, label_column, output, cli.json)
        }
        Command::Roc { ref model, points } => {
            let output = required_output(&cli.output, "roc")?;
            cmd_roc(model, points, output, cli.json)
        }
        Command::Auc { ref model } => {
            let model = docs::load_model(model)?;
            let auc = model.auc(&QuadratureRule::default()).value();
            let payload = if cli.json {
                json_line(&serde_json::json!({ "auc": auc }))
            } else {
                format!("auc = {auc}\n")
            };
            emit(&payload, cli.output.as_deref())
        }
        Command::Youden { ref model } => {
            let model = docs::load_model(model)?;
            let y = model.youden();
            let payload = if cli.json {
                json_line(&youden_json(&y))
            } else {
                youden_text(&y)
            };
            emit(&payload, cli.output.as_deref())
        }
        Command::Confusion { ref model, theta } => {
            let model = docs::load_model(model)?;
            let c = model.confusion_at(theta).map_err(CliError::from_model_input)?;
            let payload = if cli.json {
                json_line(&confusion_json(&c))
            } else {
                confusion_text(&c)
            };
            emit(&payload, cli.output.as_deref())
        }
        Command::Report { ref model, theta, samples } => {
            cmd_report(model, theta, samples, cli.seed, cli.json, cli.output.as_deref())
        }
        Command::Simulate { ref model, count } => {
            let output = required_output(&cli.output, "simulate")?;
            cmd_simulate(model, count, cli.seed, output, cli.json)
        }
        Command::Plot { ref curve, youden_fpr, youden_tpr } => {
            let output = required_output(&cli.output, "plot")?;
            cmd_plot(curve, youden_fpr, youden_tpr, output)
        }
    }
}

fn required_output<'a>(output: &'a Option<PathBuf>, verb: &str) -> CliResult<&'a Path> {
    output.as_deref().ok_or_else(|| CliError::usage(format!("--output is required for {verb}")))
}

/// Prints the payload and optionally mirrors it to a file.
fn emit(payload: &str, output: Option<&Path>) -> CliResult<()> {
    print!("{payload}");
    if let Some(path) = output {
        std::fs::write(path, payload).map_err(|e| CliError::io(path, e))?;
    }
    Ok(())
}

fn json_line(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json serializes");
    s.push('\n');
    s
}

fn cmd_fit(input: &Path, label_column: &str, output: &Path, json: bool) -> CliResult<()> {
    let data = read_labeled_csv(input, label_column)?;
    let counts = data.class_counts();
    let model = LdaModel::fit(&data).map_err(CliError::from_model_input)?;
    if let Some(asym) = model.class0().cov().asymmetry_warning() {
        eprintln!("warning: covariance asymmetry {asym:e} averaged away");
    }
    docs::save_model(&model, output)?;
    let payload = if json {
        json_line(&serde_json::json!({
            "n": data.feature_count(),
            "m": data.len(),
            "count0": counts[0],
            "count1": counts[1],
            "delta": model.delta(),
            "model_path": output.display().to_string(),
        }))
    } else {
        format!(
            "rows: {}\nfeatures: {}\nclass counts: {} (label 0), {} (label 1)\ndelta: {}\nmodel written to {}\n",
            data.len(),
            data.feature_count(),
            counts[0],
            counts[1],
            model.delta(),
            output.display()
        )
    };
    print!("{payload}");
    Ok(())
}

fn read_labeled_csv(path: &Path, label_column: &str) -> CliResult<LabeledDataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => {
                CliError::io(path, std::io::Error::other(e.to_string()))
            }
            _ => CliError::parse(format!("{}: {e}", path.display())),
        })?;
    let headers = reader
        .headers()
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?
        .clone();
    let label_idx = headers.iter().position(|h| h == label_column).ok_or_else(|| {
        CliError::parse(format!(
            "{}: label column {label_column:?} not found in header",
            path.display()
        ))
    })?;
    let feature_names: Vec<String> =
        headers.iter().enumerate().filter(|(i, _)| *i != label_idx).map(|(_, h)| h.to_string()).collect();
    if feature_names.is_empty() {
        return Err(CliError::parse(format!(
            "{}: no feature columns besides the label",
            path.display()
        )));
    }

    let mut features = Vec::new();
    let mut labels = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 2; // 1-based, after the header
        let record =
            record.map_err(|e| CliError::parse(format!("{}: row {row}: {e}", path.display())))?;
        if record.len() != headers.len() {
            return Err(CliError::parse(format!(
                "{}: row {row}: expected {} fields, found {}",
                path.display(),
                headers.len(),
                record.len()
            )));
        }
        let mut feature_row = Vec::with_capacity(feature_names.len());
        for (col, cell) in record.iter().enumerate() {
            if col == label_idx {
                continue;
            }
            let value: f64 = cell.parse().map_err(|_| {
                CliError::parse(format!(
                    "{}: row {row}, column {:?}: cannot parse {cell:?} as a number",
                    path.display(),
                    headers.get(col).unwrap_or("")
                ))
            })?;
            feature_row.push(value);
        }
        let label_cell = record.get(label_idx).unwrap_or("");
        let label_value: f64 = label_cell.parse().map_err(|_| {
            CliError::parse(format!(
                "{}: row {row}, column {label_column:?}: cannot parse {label_cell:?} as a label",
                path.display()
            ))
        })?;
        let label = if label_value == 0.0 {
            0u8
        } else if label_value == 1.0 {
            1u8
        } else {
            return Err(CliError::parse(format!(
                "{}: row {row}, column {label_column:?}: label must be 0 or 1, got {label_cell:?}",
                path.display()
            )));
        };
        features.push(feature_row);
        labels.push(label);
    }
    LabeledDataset::new(features, labels).map_err(CliError::from_model_input)
}

fn cmd_roc(model_path: &Path, points: usize, output: &Path, json: bool) -> CliResult<()> {
    if points < 2 {
        return Err(CliError::usage(format!("--points must be at least 2, got {points}")));
    }
    let model = docs::load_model(model_path)?;
    let curve = model.sample_roc(points).map_err(CliError::from_model_input)?;
    docs::write_curve(&curve, output)?;
    let payload = if json {
        json_line(&serde_json::json!({
            "rows": curve.len(),
            "trapezoid_auc": trapezoid_auc(&curve),
            "curve_path": output.display().to_string(),
        }))
    } else {
        format!("wrote {} rows to {}\n", curve.len(), output.display())
    };
    print!("{payload}");
    Ok(())
}

#[derive(Serialize)]
struct ConfusionJson {
    theta: f64,
    p_tn: f64,
    p_fp: f64,
    p_fn: f64,
    p_tp: f64,
}

fn confusion_json(c: &ConfusionDistribution) -> serde_json::Value {
    serde_json::to_value(ConfusionJson {
        theta: c.theta(),
        p_tn: c.p_tn().value(),
        p_fp: c.p_fp().value(),
        p_fn: c.p_fn().value(),
        p_tp: c.p_tp().value(),
    })
    .expect("confusion serializes")
}

fn confusion_text(c: &ConfusionDistribution) -> String {
    format!(
        "confusion at theta = {}:\n  p_tn = {}\n  p_fp = {}\n  p_fn = {}\n  p_tp = {}\n",
        c.theta(),
        c.p_tn().value(),
        c.p_fp().value(),
        c.p_fn().value(),
        c.p_tp().value()
    )
}

fn youden_json(y: &YoudenResult) -> serde_json::Value {
    serde_json::json!({
        "theta_star": y.theta_star,
        "fpr": y.fpr_at_star.value(),
        "tpr": y.tpr_at_star.value(),
        "j_max": y.j_max,
        "degenerate": y.degenerate,
    })
}

fn youden_text(y: &YoudenResult) -> String {
    format!(
        "youden: theta* = {}, fpr = {}, tpr = {}, j_max = {}{}\n",
        y.theta_star,
        y.fpr_at_star.value(),
        y.tpr_at_star.value(),
        y.j_max,
        if y.degenerate { " (degenerate model)" } else { "" }
    )
}

fn cmd_report(
    model_path: &Path,
    theta: f64,
    samples: usize,
    seed: u64,
    json: bool,
    output: Option<&Path>,
) -> CliResult<()> {
    let model = docs::load_model(model_path)?;
    let confusion = model.confusion_at(theta).map_err(CliError::from_model_input)?;
    let youden = model.youden();
    let auc = model.auc(&QuadratureRule::default()).value();
    let verification = if samples > 0 {
        Some(mc_confusion(&model, theta, samples, seed).map_err(CliError::from_model_input)?)
    } else {
        None
    };

    let payload = if json {
        let mut doc = serde_json::json!({
            "schema_version": "1",
            "theta": theta,
            "confusion": confusion_json(&confusion),
            "youden": youden_json(&youden),
            "auc": auc,
        });
        if let Some(v) = &verification {
            doc["monte_carlo"] = serde_json::json!({
                "samples": v.sample_count,
                "seed": v.seed,
                "estimated": {
                    "p_tn": v.estimated[0],
                    "p_fp": v.estimated[1],
                    "p_fn": v.estimated[2],
                    "p_tp": v.estimated[3],
                },
                "max_abs_gap": v.max_abs_gap,
            });
        }
        json_line(&doc)
    } else {
        let mut text = confusion_text(&confusion);
        text.push_str(&youden_text(&youden));
        text.push_str(&format!("auc = {auc}\n"));
        if let Some(v) = &verification {
            text.push_str(&format!(
                "monte carlo ({} samples, seed {}):\n  estimated p_tn = {}\n  estimated p_fp = {}\n  estimated p_fn = {}\n  estimated p_tp = {}\n  max abs gap = {}\n",
                v.sample_count,
                v.seed,
                v.estimated[0],
                v.estimated[1],
                v.estimated[2],
                v.estimated[3],
                v.max_abs_gap
            ));
        }
        text
    };
    emit(&payload, output)
}

fn cmd_simulate(
    model_path: &Path,
    count: usize,
    seed: u64,
    output: &Path,
    json: bool,
) -> CliResult<()> {
    if count == 0 {
        return Err(CliError::usage("--count must be at least 1".to_string()));
    }
    let model = docs::load_model(model_path)?;
    let data = simulate_dataset(&model, count, seed).map_err(CliError::from_model_input)?;
    let n = data.feature_count();
    let mut csv_text = String::new();
    for j in 1..=n {
        csv_text.push_str(&format!("x{j},"));
    }
    csv_text.push_str("label\n");
    for (row, label) in data.rows().zip(data.labels()) {
        for v in row {
            csv_text.push_str(&format!("{v},"));
        }
        csv_text.push_str(&format!("{label}\n"));
    }
    std::fs::write(output, csv_text).map_err(|e| CliError::io(output, e))?;
    let payload = if json {
        json_line(&serde_json::json!({
            "rows": data.len(),
            "features": n,
            "seed": seed,
            "data_path": output.display().to_string(),
        }))
    } else {
        format!("wrote {} rows to {}\n", data.len(), output.display())
    };
    print!("{payload}");
    Ok(())
}

fn cmd_plot(
    curve_path: &Path,
    youden_fpr: Option<f64>,
    youden_tpr: Option<f64>,
    output: &Path,
) -> CliResult<()> {
    let marker = match (youden_fpr, youden_tpr) {
        (Some(f), Some(t)) => Some((f, t)),
        (None, None) => None,
        _ => {
            return Err(CliError::usage(
                "--youden-fpr and --youden-tpr must be given together".to_string(),
            ))
        }
    };
    let curve = docs::read_curve(curve_path)?;
    let svg = svg::curve_svg(&curve, marker);
    std::fs::write(output, svg).map_err(|e| CliError::io(output, e))?;
    println!("wrote {}", output.display());
    Ok(())
}
