//! Linear discriminant model for two Gaussian classes with a shared
//! covariance matrix.
//!
//! The discriminant is the log density ratio of the classes, which is
//! affine in the features: f(x) = αᵀx + β with α = Σ⁻¹(μ₁ - μ₀) and
//! β = ½(μ₀ᵀΣ⁻¹μ₀ - μ₁ᵀΣ⁻¹μ₁). The model also carries the discriminant
//! scale ‖γ‖ = √(αᵀΣα) and the class separation δ = αᵀ(μ₁-μ₀)/‖γ‖; the
//! two coincide and equal the Mahalanobis distance between the means.

use crate::error::{Error, Result};
use crate::gauss::Probability;
use crate::mvn::MvnDistribution;
use crate::symmat::SymMatrix;

#[derive(Debug, Clone)]
pub struct LdaModel {
    class0: MvnDistribution,
    class1: MvnDistribution,
    prior0: Probability,
    prior1: Probability,
    alpha: Vec<f64>,
    beta: f64,
    scale: f64,
    delta: f64,
}

impl LdaModel {
    /// Builds the model from known parameters.
    pub fn from_params(
        mu0: Vec<f64>,
        mu1: Vec<f64>,
        sigma: SymMatrix,
        prior0: f64,
    ) -> Result<Self> {
        if mu0.len() != mu1.len() {
            return Err(Error::DimensionMismatch { expected: mu0.len(), found: mu1.len() });
        }
        if !prior0.is_finite() {
            return Err(Error::NonFinite { what: "prior", value: prior0 });
        }
        if prior0 <= 0.0 || prior0 >= 1.0 {
            return Err(Error::OutOfRange { what: "prior", value: prior0 });
        }
        let diff: Vec<f64> = mu1.iter().zip(&mu0).map(|(a, b)| a - b).collect();
        let alpha = sigma.solve(&diff)?;
        let beta = 0.5 * (sigma.inv_quad_form(&mu0)? - sigma.inv_quad_form(&mu1)?);
        let scale = sigma.quad_form(&alpha)?.max(0.0).sqrt();
        let delta = if scale == 0.0 {
            0.0
        } else {
            alpha.iter().zip(&diff).map(|(a, d)| a * d).sum::<f64>() / scale
        };
        let class0 = MvnDistribution::new(mu0, sigma.clone())?;
        let class1 = MvnDistribution::new(mu1, sigma)?;
        Ok(LdaModel {
            class0,
            class1,
            prior0: Probability::new(prior0)?,
            prior1: Probability::new(1.0 - prior0)?,
            alpha,
            beta,
            scale,
            delta,
        })
    }

    /// `from_params` with balanced priors. The rates and the ROC curve do
    /// not depend on the priors at all; only the confusion distribution
    /// does.
    pub fn from_params_balanced(mu0: Vec<f64>, mu1: Vec<f64>, sigma: SymMatrix) -> Result<Self> {
        Self::from_params(mu0, mu1, sigma, 0.5)
    }

    /// Fits the model from labeled data: class sample means, pooled
    /// covariance with the unbiased m-2 denominator, and the class-0
    /// fraction as the prior.
    pub fn fit(data: &LabeledDataset) -> Result<Self> {
        let n = data.feature_count();
        let m = data.len();
        let counts = data.class_counts();
        for label in 0..2u8 {
            match counts[label as usize] {
                0 => return Err(Error::MissingClass { label }),
                1 => return Err(Error::ClassTooSmall { label, count: 1 }),
                _ => {}
            }
        }
        let mut means = [vec![0.0; n], vec![0.0; n]];
        for (row, &label) in data.rows().zip(data.labels()) {
            let mean = &mut means[label as usize];
            for (acc, &v) in mean.iter_mut().zip(row) {
                *acc += v;
            }
        }
        for (label, mean) in means.iter_mut().enumerate() {
            for v in mean.iter_mut() {
                *v /= counts[label] as f64;
            }
        }
        // pooled within-class scatter, accumulated on the upper triangle
        // so the result is exactly symmetric
        let mut scatter = vec![0.0; n * n];
        for (row, &label) in data.rows().zip(data.labels()) {
            let mean = &means[label as usize];
            for i in 0..n {
                let ci = row[i] - mean[i];
                for j in i..n {
                    scatter[i * n + j] += ci * (row[j] - mean[j]);
                }
            }
        }
        let denom = (m - 2) as f64;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let (a, b) = if i <= j { (i, j) } else { (j, i) };
                        scatter[a * n + b] / denom
                    })
                    .collect()
            })
            .collect();
        let sigma = SymMatrix::from_rows(&rows)?;
        let prior0 = counts[0] as f64 / m as f64;
        let [mu0, mu1] = means;
        Self::from_params(mu0, mu1, sigma, prior0)
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    pub fn class0(&self) -> &MvnDistribution {
        &self.class0
    }

    pub fn class1(&self) -> &MvnDistribution {
        &self.class1
    }

    pub fn prior0(&self) -> Probability {
        self.prior0
    }

    pub fn prior1(&self) -> Probability {
        self.prior1
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Discriminant scale ‖γ‖ = √(αᵀΣα).
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Class separation δ = αᵀ(μ₁-μ₀)/‖γ‖ (the Mahalanobis distance
    /// between the class means).
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// True when the class means coincide: the discriminant is constant
    /// and every threshold-based rate is undefined.
    pub fn is_degenerate(&self) -> bool {
        self.scale == 0.0
    }

    /// The discriminant score αᵀx + β.
    pub fn score(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: x.len() });
        }
        Ok(self.alpha.iter().zip(x).map(|(a, v)| a * v).sum::<f64>() + self.beta)
    }

    /// log φ₁(x) - log φ₀(x); agrees with [`score`](Self::score) up to
    /// floating-point noise.
    pub fn log_density_ratio(&self, x: &[f64]) -> Result<f64> {
        Ok(self.class1.log_density(x)? - self.class0.log_density(x)?)
    }
}

/// Feature matrix with binary labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    features: Vec<Vec<f64>>,
    labels: Vec<u8>,
}

impl LabeledDataset {
    pub fn new(features: Vec<Vec<f64>>, labels: Vec<u8>) -> Result<Self> {
        if features.len() != labels.len() {
            return Err(Error::LengthMismatch {
                what: "features vs labels",
                left: features.len(),
                right: labels.len(),
            });
        }
        if features.is_empty() {
            return Err(Error::TooFewPoints { found: 0, needed: 1 });
        }
        let width = features[0].len();
        if width == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        for row in &features {
            if row.len() != width {
                return Err(Error::DimensionMismatch { expected: width, found: row.len() });
            }
            for &v in row {
                if !v.is_finite() {
                    return Err(Error::NonFinite { what: "feature value", value: v });
                }
            }
        }
        for (index, &label) in labels.iter().enumerate() {
            if label > 1 {
                return Err(Error::InvalidLabel { index, value: label });
            }
        }
        Ok(LabeledDataset { features, labels })
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn feature_count(&self) -> usize {
        self.features[0].len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.features.iter().map(|r| r.as_slice())
    }

    pub fn labels(&self) -> std::slice::Iter<'_, u8> {
        self.labels.iter()
    }

    pub fn class_counts(&self) -> [usize; 2] {
        let ones = self.labels.iter().filter(|&&l| l == 1).count();
        [self.labels.len() - ones, ones]
    }
}

/// A finite grid over the (conceptually unbounded) threshold line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdGrid {
    lo: f64,
    hi: f64,
    count: usize,
}

impl ThresholdGrid {
    pub fn new(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !lo.is_finite() {
            return Err(Error::NonFinite { what: "grid lower bound", value: lo });
        }
        if !hi.is_finite() {
            return Err(Error::NonFinite { what: "grid upper bound", value: hi });
        }
        if lo >= hi {
            return Err(Error::OutOfRange { what: "grid bounds (lo must be < hi)", value: lo });
        }
        if count < 2 {
            return Err(Error::TooFewPoints { found: count, needed: 2 });
        }
        Ok(ThresholdGrid { lo, hi, count })
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        let step = (self.hi - self.lo) / (self.count - 1) as f64;
        (0..self.count).map(move |i| {
            if i + 1 == self.count {
                self.hi
            } else {
                self.lo + i as f64 * step
            }
        })
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}
