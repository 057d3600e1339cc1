//! Exact confusion distribution, FPR/TPR, ROC curve, AUC, curve
//! derivatives, and the Youden operating point for an [`LdaModel`].
//!
//! Everything here is closed-form. With s = ‖γ‖ the discriminant scale
//! and uᵢ(θ) = (αᵀμᵢ + β - θ)/s:
//!
//! * the four confusion probabilities are the prior-weighted half-space
//!   masses Φ(u₀), 1-Φ(u₀) (class 0) and Φ(u₁), 1-Φ(u₁) (class 1) with
//!   the threshold folded into the offset;
//! * FPR(θ) = 1 - Φ(-u₀(θ)), TPR(θ) = 1 - Φ(-u₁(θ));
//! * the curve itself is TPR = 1 - Φ(Φ⁻¹(1-FPR) - δ);
//! * AUC = 1 - ∫ Φ(v - δ) φ(v) dv, evaluated by Gaussian-weighted
//!   quadrature (equivalently Φ(δ/√2), which the tests use as an oracle).

use crate::error::{Error, Result};
use crate::gauss::{
    cdf_raw, integrate_gauss_weighted, pdf_raw, std_normal_quantile, Probability,
    QuadratureRule,
};
use crate::lda::LdaModel;
use crate::mvn::HalfSpace;

/// The joint law of the four classification outcomes at a threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfusionDistribution {
    theta: f64,
    p_tn: Probability,
    p_fp: Probability,
    p_fn: Probability,
    p_tp: Probability,
}

impl ConfusionDistribution {
    pub fn theta(&self) -> f64 {
        self.theta
    }
    pub fn p_tn(&self) -> Probability {
        self.p_tn
    }
    pub fn p_fp(&self) -> Probability {
        self.p_fp
    }
    pub fn p_fn(&self) -> Probability {
        self.p_fn
    }
    pub fn p_tp(&self) -> Probability {
        self.p_tp
    }

    /// Cells in (TN, FP, FN, TP) order.
    pub fn cells(&self) -> [f64; 4] {
        [self.p_tn.value(), self.p_fp.value(), self.p_fn.value(), self.p_tp.value()]
    }
}

/// One operating point; `theta` is ±∞ on the appended limit endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RocPoint {
    pub theta: f64,
    pub fpr: Probability,
    pub tpr: Probability,
}

/// Operating points sorted by FPR, with the limit endpoints (0,0) at
/// θ = +∞ and (1,1) at θ = -∞ included.
///
/// FPR and TPR are validated non-decreasing. Analytically sampled curves
/// have strictly increasing interior FPR until the grid outruns double
/// precision next to the corners; empirical step curves contain genuinely
/// vertical segments, so the container cannot require strictness.
#[derive(Debug, Clone, PartialEq)]
pub struct RocCurve {
    points: Vec<RocPoint>,
}

impl RocCurve {
    pub fn new(points: Vec<RocPoint>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::TooFewPoints { found: points.len(), needed: 2 });
        }
        for (i, pair) in points.windows(2).enumerate() {
            if pair[1].fpr < pair[0].fpr {
                return Err(Error::OutOfRange {
                    what: "curve FPR order at index",
                    value: (i + 1) as f64,
                });
            }
            if pair[1].tpr < pair[0].tpr {
                return Err(Error::OutOfRange {
                    what: "curve TPR order at index",
                    value: (i + 1) as f64,
                });
            }
        }
        Ok(RocCurve { points })
    }

    pub fn points(&self) -> &[RocPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// First and second derivative of TPR with respect to FPR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RocDerivatives {
    pub slope: f64,
    pub curvature: f64,
}

/// The Youden-optimal operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YoudenResult {
    pub theta_star: f64,
    pub fpr_at_star: Probability,
    pub tpr_at_star: Probability,
    pub j_max: f64,
    pub degenerate: bool,
}

impl LdaModel {
    fn shifted_argument(&self, class_mean: &[f64], theta: f64) -> f64 {
        let along: f64 = self.alpha().iter().zip(class_mean).map(|(a, m)| a * m).sum();
        (along + self.beta() - theta) / self.scale()
    }

    /// Distribution of the four outcomes at `theta`, each cell computed
    /// through the half-space mass with offset β - θ. A degenerate model
    /// (constant score β) splits the whole mass by priors on whichever
    /// side of θ the constant falls, ties going negative.
    pub fn confusion_at(&self, theta: f64) -> Result<ConfusionDistribution> {
        if !theta.is_finite() {
            return Err(Error::NonFinite { what: "threshold", value: theta });
        }
        let (p0, p1) = (self.prior0().value(), self.prior1().value());
        if self.is_degenerate() {
            let all_positive = self.beta() > theta;
            let (neg0, neg1) = if all_positive { (0.0, 0.0) } else { (p0, p1) };
            return Ok(ConfusionDistribution {
                theta,
                p_tn: Probability::clamped(neg0),
                p_fp: Probability::clamped(p0 - neg0),
                p_fn: Probability::clamped(neg1),
                p_tp: Probability::clamped(p1 - neg1),
            });
        }
        let negative_region = HalfSpace::new(self.alpha().to_vec(), self.beta() - theta)?;
        let mass0 = self.class0().halfspace_mass(&negative_region)?.value();
        let mass1 = self.class1().halfspace_mass(&negative_region)?.value();
        Ok(ConfusionDistribution {
            theta,
            p_tn: Probability::clamped(p0 * mass0),
            p_fp: Probability::clamped(p0 * (1.0 - mass0)),
            p_fn: Probability::clamped(p1 * mass1),
            p_tp: Probability::clamped(p1 * (1.0 - mass1)),
        })
    }

    /// FPR(θ) = 1 - Φ(-(αᵀμ₀ + β - θ)/‖γ‖).
    pub fn fpr_at(&self, theta: f64) -> Result<Probability> {
        self.rate_at(theta, false)
    }

    /// TPR(θ) = 1 - Φ(-(αᵀμ₁ + β - θ)/‖γ‖).
    pub fn tpr_at(&self, theta: f64) -> Result<Probability> {
        self.rate_at(theta, true)
    }

    fn rate_at(&self, theta: f64, positive_class: bool) -> Result<Probability> {
        if !theta.is_finite() {
            return Err(Error::NonFinite { what: "threshold", value: theta });
        }
        if self.is_degenerate() {
            return Err(Error::DegenerateModel);
        }
        let mean = if positive_class { self.class1().mean() } else { self.class0().mean() };
        let u = self.shifted_argument(mean, theta);
        Ok(Probability::clamped(1.0 - cdf_raw(-u)))
    }

    /// The curve equation: TPR at a given FPR.
    pub fn tpr_at_fpr(&self, fpr: Probability) -> Result<Probability> {
        if self.is_degenerate() {
            return Err(Error::DegenerateModel);
        }
        tpr_for_fpr_with_delta(fpr, self.delta())
    }

    /// Samples the curve at FPR values Φ(u) for `count` equally spaced
    /// u on [-8, 8] — uniform in the quantile domain, so points
    /// concentrate near the corners where the curve bends — and appends
    /// the limit endpoints.
    pub fn sample_roc(&self, count: usize) -> Result<RocCurve> {
        if self.is_degenerate() {
            return Err(Error::DegenerateModel);
        }
        if count < 2 {
            return Err(Error::TooFewPoints { found: count, needed: 2 });
        }
        let radius = 8.0;
        let along0: f64 =
            self.alpha().iter().zip(self.class0().mean()).map(|(a, m)| a * m).sum();
        let mut points = Vec::with_capacity(count + 2);
        points.push(RocPoint {
            theta: f64::INFINITY,
            fpr: Probability::clamped(0.0),
            tpr: Probability::clamped(0.0),
        });
        let step = 2.0 * radius / (count - 1) as f64;
        for i in 0..count {
            let u = if i + 1 == count { radius } else { -radius + i as f64 * step };
            let fpr = Probability::clamped(cdf_raw(u));
            let tpr = tpr_for_fpr_with_delta(fpr, self.delta())?;
            // θ solving FPR(θ) = Φ(u)
            let theta = along0 + self.beta() - self.scale() * u;
            points.push(RocPoint { theta, fpr, tpr });
        }
        points.push(RocPoint {
            theta: f64::NEG_INFINITY,
            fpr: Probability::clamped(1.0),
            tpr: Probability::clamped(1.0),
        });
        RocCurve::new(points)
    }

    /// Area under the curve: 1 - ∫ Φ(v - δ) φ(v) dv, in [0.5, 1) for a
    /// valid model. A degenerate model has the diagonal curve and returns
    /// exactly 0.5.
    pub fn auc(&self, rule: &QuadratureRule) -> Probability {
        if self.delta() == 0.0 {
            return Probability::clamped(0.5);
        }
        let delta = self.delta();
        let integral = integrate_gauss_weighted(|v| cdf_raw(v - delta), rule);
        Probability::clamped((1.0 - integral).clamp(0.5, 1.0 - f64::EPSILON / 2.0))
    }

    /// Slope and curvature of the curve at an interior FPR:
    /// slope = φ(v - δ)/φ(v) and curvature = -δ φ(v - δ)/φ²(v) with
    /// v = Φ⁻¹(1 - FPR). The slope ratio is formed as exp(δv - δ²/2),
    /// which is the same expression without underflow at extreme v.
    pub fn roc_derivatives(&self, fpr: Probability) -> Result<RocDerivatives> {
        let p = fpr.value();
        if p <= 0.0 || p >= 1.0 {
            return Err(Error::OutOfRange { what: "fpr", value: p });
        }
        let delta = self.delta();
        let v = std_normal_quantile(Probability::clamped(1.0 - p))?;
        let slope = (delta * v - 0.5 * delta * delta).exp();
        let curvature = -delta * slope / pdf_raw(v);
        Ok(RocDerivatives { slope, curvature })
    }

    /// The Youden-optimal threshold θ* = 0 with its rates and
    /// J = Φ(-(αᵀμ₀+β)/‖γ‖) - Φ(-(αᵀμ₁+β)/‖γ‖). For a degenerate model
    /// J ≡ 0 and θ* = 0 is reported by convention.
    pub fn youden(&self) -> YoudenResult {
        if self.is_degenerate() {
            return YoudenResult {
                theta_star: 0.0,
                fpr_at_star: Probability::clamped(0.0),
                tpr_at_star: Probability::clamped(0.0),
                j_max: 0.0,
                degenerate: true,
            };
        }
        let u0 = self.shifted_argument(self.class0().mean(), 0.0);
        let u1 = self.shifted_argument(self.class1().mean(), 0.0);
        let j_max = cdf_raw(-u0) - cdf_raw(-u1);
        let fpr = self.fpr_at(0.0).expect("finite threshold on a non-degenerate model");
        let tpr = self.tpr_at(0.0).expect("finite threshold on a non-degenerate model");
        YoudenResult {
            theta_star: 0.0,
            fpr_at_star: fpr,
            tpr_at_star: tpr,
            j_max,
            degenerate: false,
        }
    }
}

/// TPR = 1 - Φ(Φ⁻¹(1 - FPR) - δ) for an explicit separation δ; δ = 0
/// collapses to the chance diagonal. Saturated values are nudged into the
/// open interval so curve points stay interior.
pub fn tpr_for_fpr_with_delta(fpr: Probability, delta: f64) -> Result<Probability> {
    let p = fpr.value();
    if p <= 0.0 || p >= 1.0 {
        return Err(Error::OutOfRange { what: "fpr", value: p });
    }
    if !delta.is_finite() {
        return Err(Error::NonFinite { what: "delta", value: delta });
    }
    let v = std_normal_quantile(Probability::clamped(1.0 - p))?;
    let tpr = 1.0 - cdf_raw(v - delta);
    Ok(Probability::clamped(
        tpr.clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON / 2.0),
    ))
}
