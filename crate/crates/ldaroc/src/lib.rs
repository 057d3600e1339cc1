//! Closed-form ROC analysis for linear discriminant classifiers under the
//! shared-covariance Gaussian model.
//!
//! When both classes are Gaussian with a common covariance, the
//! discriminant score is affine and every threshold-based quantity has a
//! closed form: the confusion distribution, FPR/TPR, the full ROC curve,
//! its AUC, and the Youden-optimal threshold (which is always score 0).
//! This crate evaluates those forms exactly and ships the verification
//! oracles — a deterministic Monte Carlo sampler and the sort-based
//! empirical ROC estimator — used to check them.
//!
//! ```
//! use ldaroc::{LdaModel, QuadratureRule, SymMatrix};
//!
//! let model = LdaModel::from_params_balanced(
//!     vec![0.0], vec![2.0], SymMatrix::identity(1),
//! ).unwrap();
//! let auc = model.auc(&QuadratureRule::default());
//! assert!((auc.value() - 0.9213503964748574).abs() < 1e-10);
//! let youden = model.youden();
//! assert_eq!(youden.theta_star, 0.0);
//! ```

mod empirical;
mod error;
mod gauss;
mod lda;
mod mvn;
mod rng;
mod roc;
mod symmat;

pub use empirical::{
    empirical_roc, mc_confusion, score_dataset, simulate_dataset, trapezoid_auc, ScoredSample,
    VerificationReport,
};
pub use error::{Error, Result};
pub use gauss::{
    integrate_gauss_weighted, std_normal_cdf, std_normal_pdf, std_normal_quantile, Probability,
    QuadratureRule,
};
pub use lda::{LabeledDataset, LdaModel, ThresholdGrid};
pub use mvn::{HalfSpace, MvnDistribution};
pub use roc::{
    tpr_for_fpr_with_delta, ConfusionDistribution, RocCurve, RocDerivatives, RocPoint,
    YoudenResult,
};
pub use symmat::{CholeskyFactor, SpectralDecomposition, SymMatrix};
