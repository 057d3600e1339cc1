//! Verification oracles: the sort-based empirical ROC estimator,
//! trapezoid AUC, Monte Carlo estimation of the confusion distribution,
//! and a labeled-data generator.
//!
//! Thresholding is strict (`score > θ` is positive) everywhere, matching
//! the analytic side; ties at the threshold go negative.

use crate::error::{Error, Result};
use crate::gauss::Probability;
use crate::lda::{LabeledDataset, LdaModel};
use crate::roc::{ConfusionDistribution, RocCurve, RocPoint};
use crate::rng::{derive_seed, CounterRng};

/// Discriminant scores paired with the true labels.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredSample {
    scores: Vec<f64>,
    labels: Vec<u8>,
}

impl ScoredSample {
    pub fn new(scores: Vec<f64>, labels: Vec<u8>) -> Result<Self> {
        if scores.len() != labels.len() {
            return Err(Error::LengthMismatch {
                what: "scores vs labels",
                left: scores.len(),
                right: labels.len(),
            });
        }
        for &s in &scores {
            if !s.is_finite() {
                return Err(Error::NonFinite { what: "score", value: s });
            }
        }
        for (index, &label) in labels.iter().enumerate() {
            if label > 1 {
                return Err(Error::InvalidLabel { index, value: label });
            }
        }
        Ok(ScoredSample { scores, labels })
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }
}

/// Analytic versus Monte Carlo confusion cells at one threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub theta: f64,
    pub analytic: ConfusionDistribution,
    /// Estimated frequencies in (TN, FP, FN, TP) order.
    pub estimated: [f64; 4],
    pub max_abs_gap: f64,
    pub sample_count: usize,
    pub seed: u64,
}

/// Empirical ROC curve with thresholds at the distinct score values in
/// decreasing order; at each, FPR and TPR count the strictly greater
/// scores per class. Tied scores share one point, the limit endpoints
/// are included, and positionally duplicate points are merged.
pub fn empirical_roc(sample: &ScoredSample) -> Result<RocCurve> {
    let n1 = sample.labels.iter().filter(|&&l| l == 1).count();
    let n0 = sample.len() - n1;
    if n0 == 0 {
        return Err(Error::MissingClass { label: 0 });
    }
    if n1 == 0 {
        return Err(Error::MissingClass { label: 1 });
    }

    let mut order: Vec<usize> = (0..sample.len()).collect();
    order.sort_by(|&a, &b| {
        sample.scores[b].partial_cmp(&sample.scores[a]).expect("scores are finite")
    });

    let mut points = vec![RocPoint {
        theta: f64::INFINITY,
        fpr: Probability::clamped(0.0),
        tpr: Probability::clamped(0.0),
    }];
    let (mut above0, mut above1) = (0usize, 0usize);
    let mut i = 0;
    while i < order.len() {
        let theta = sample.scores[order[i]];
        // counts accumulated so far are exactly the scores > theta
        push_unless_duplicate(&mut points, RocPoint {
            theta,
            fpr: Probability::clamped(above0 as f64 / n0 as f64),
            tpr: Probability::clamped(above1 as f64 / n1 as f64),
        });
        while i < order.len() && sample.scores[order[i]] == theta {
            match sample.labels[order[i]] {
                0 => above0 += 1,
                _ => above1 += 1,
            }
            i += 1;
        }
    }
    push_unless_duplicate(&mut points, RocPoint {
        theta: f64::NEG_INFINITY,
        fpr: Probability::clamped(1.0),
        tpr: Probability::clamped(1.0),
    });
    RocCurve::new(points)
}

fn push_unless_duplicate(points: &mut Vec<RocPoint>, p: RocPoint) {
    if let Some(last) = points.last() {
        if last.fpr == p.fpr && last.tpr == p.tpr {
            return;
        }
    }
    points.push(p);
}

/// Trapezoid rule over the curve points in FPR order. The curve type
/// guarantees at least two points.
pub fn trapezoid_auc(curve: &RocCurve) -> f64 {
    curve
        .points()
        .windows(2)
        .map(|w| {
            let (a, b) = (&w[0], &w[1]);
            (b.fpr.value() - a.fpr.value()) * (a.tpr.value() + b.tpr.value()) * 0.5
        })
        .sum()
}

// Draw j of the labeled generator: one uniform against p₀ picks the
// class, then the features come from that class sampler. Both streams
// derive from (seed, j) alone, so chunked generation is worker-count
// independent.
fn draw_labeled(model: &LdaModel, seed: u64, index: u64) -> (u8, Vec<f64>) {
    let draw_seed = derive_seed(seed, index);
    let mut class_rng = CounterRng::new(draw_seed);
    let label = if class_rng.next_uniform() < model.prior0().value() { 0u8 } else { 1u8 };
    let dist = if label == 0 { model.class0() } else { model.class1() };
    (label, dist.sample_at(draw_seed, 0))
}

/// Monte Carlo estimate of the confusion distribution, compared against
/// the closed form.
pub fn mc_confusion(
    model: &LdaModel,
    theta: f64,
    count: usize,
    seed: u64,
) -> Result<VerificationReport> {
    if count == 0 {
        return Err(Error::TooFewPoints { found: 0, needed: 1 });
    }
    let analytic = model.confusion_at(theta)?;
    let mut tallies = [0usize; 4]; // TN, FP, FN, TP
    for j in 0..count {
        let (label, x) = draw_labeled(model, seed, j as u64);
        let positive = model.score(&x).expect("sampled point has model dimension") > theta;
        let cell = match (label, positive) {
            (0, false) => 0,
            (0, true) => 1,
            (_, false) => 2,
            (_, true) => 3,
        };
        tallies[cell] += 1;
    }
    let estimated = tallies.map(|t| t as f64 / count as f64);
    let max_abs_gap = analytic
        .cells()
        .iter()
        .zip(&estimated)
        .map(|(a, e)| (a - e).abs())
        .fold(0.0f64, f64::max);
    Ok(VerificationReport { theta, analytic, estimated, max_abs_gap, sample_count: count, seed })
}

/// Scores every row of the dataset, carrying the labels through.
pub fn score_dataset(model: &LdaModel, data: &LabeledDataset) -> Result<ScoredSample> {
    let mut scores = Vec::with_capacity(data.len());
    for row in data.rows() {
        scores.push(model.score(row)?);
    }
    ScoredSample::new(scores, data.labels().copied().collect())
}

/// Generates `count` labeled draws from the model, deterministically in
/// `seed`.
pub fn simulate_dataset(model: &LdaModel, count: usize, seed: u64) -> Result<LabeledDataset> {
    if count == 0 {
        return Err(Error::TooFewPoints { found: 0, needed: 1 });
    }
    let mut features = Vec::with_capacity(count);
    let mut labels = Vec::with_capacity(count);
    for j in 0..count {
        let (label, x) = draw_labeled(model, seed, j as u64);
        features.push(x);
        labels.push(label);
    }
    LabeledDataset::new(features, labels)
}
