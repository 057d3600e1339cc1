//! Multivariate normal distribution: density, half-space probability
//! mass, and a deterministic seeded sampler for Monte Carlo verification.

use crate::error::{Error, Result};
use crate::gauss::{cdf_raw, Probability};
use crate::rng::{derive_seed, CounterRng};
use crate::symmat::{CholeskyFactor, SymMatrix};

/// N(μ, Σ) with positive-definite Σ. The Cholesky factor is computed once
/// at construction and reused by the density and the sampler.
#[derive(Debug, Clone)]
pub struct MvnDistribution {
    mean: Vec<f64>,
    cov: SymMatrix,
    chol: CholeskyFactor,
}

/// The region αᵀx + β < 0 for a nonzero normal vector α.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfSpace {
    normal: Vec<f64>,
    offset: f64,
}

impl HalfSpace {
    pub fn new(normal: Vec<f64>, offset: f64) -> Result<Self> {
        for &v in &normal {
            if !v.is_finite() {
                return Err(Error::NonFinite { what: "half-space normal", value: v });
            }
        }
        if !offset.is_finite() {
            return Err(Error::NonFinite { what: "half-space offset", value: offset });
        }
        if normal.iter().all(|&v| v == 0.0) {
            return Err(Error::DegenerateHalfSpace);
        }
        Ok(HalfSpace { normal, offset })
    }

    pub fn normal(&self) -> &[f64] {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// The complementary region αᵀx + β > 0 (the shared boundary carries
    /// no probability mass).
    pub fn complement(&self) -> HalfSpace {
        HalfSpace {
            normal: self.normal.iter().map(|v| -v).collect(),
            offset: -self.offset,
        }
    }
}

impl MvnDistribution {
    pub fn new(mean: Vec<f64>, cov: SymMatrix) -> Result<Self> {
        if mean.len() != cov.dim() {
            return Err(Error::DimensionMismatch { expected: cov.dim(), found: mean.len() });
        }
        for &v in &mean {
            if !v.is_finite() {
                return Err(Error::NonFinite { what: "mean entry", value: v });
            }
        }
        let chol = cov.cholesky()?;
        Ok(MvnDistribution { mean, cov, chol })
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    pub fn cov(&self) -> &SymMatrix {
        &self.cov
    }

    pub fn density(&self, x: &[f64]) -> Result<f64> {
        Ok(self.log_density(x)?.exp())
    }

    /// log φ(x) = -½ (n log 2π + log det Σ + (x-μ)ᵀ Σ⁻¹ (x-μ)).
    pub fn log_density(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: x.len() });
        }
        let centered: Vec<f64> = x.iter().zip(&self.mean).map(|(a, b)| a - b).collect();
        let y = self.chol.forward_solve(&centered);
        let maha: f64 = y.iter().map(|v| v * v).sum();
        let n = self.dim() as f64;
        Ok(-0.5 * (n * (2.0 * std::f64::consts::PI).ln() + self.chol.log_det() + maha))
    }

    /// Probability mass of {x : αᵀx + β < 0}, which is
    /// Φ(-(αᵀμ + β) / √(αᵀΣα)).
    pub fn halfspace_mass(&self, h: &HalfSpace) -> Result<Probability> {
        let scale = self.halfspace_scale(h)?;
        let shift: f64 =
            h.normal.iter().zip(&self.mean).map(|(a, m)| a * m).sum::<f64>() + h.offset;
        Ok(Probability::clamped(cdf_raw(-shift / scale)))
    }

    fn halfspace_scale(&self, h: &HalfSpace) -> Result<f64> {
        if h.normal.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: h.normal.len(),
            });
        }
        let s = self.cov.quad_form(&h.normal)?.max(0.0).sqrt();
        if s == 0.0 {
            // quad form of a nonzero vector in a PD matrix is positive;
            // zero here means the normal itself was zero
            return Err(Error::DegenerateHalfSpace);
        }
        Ok(s)
    }

    /// Same mass computed through the spectral factorization
    /// ‖√Λ Qᵀ α‖ instead of √(αᵀΣα); retained as the second route for
    /// the equivalence test.
    #[allow(dead_code)]
    pub(crate) fn halfspace_mass_via_spectral(&self, h: &HalfSpace) -> Result<Probability> {
        let spectral = self.cov.spectral()?;
        let s = spectral.scaled_rotation_norm(&h.normal)?;
        if s == 0.0 {
            return Err(Error::DegenerateHalfSpace);
        }
        let shift: f64 =
            h.normal.iter().zip(&self.mean).map(|(a, m)| a * m).sum::<f64>() + h.offset;
        Ok(Probability::clamped(cdf_raw(-shift / s)))
    }

    /// `count` draws, fully determined by `seed`. Draw j is generated from
    /// the sub-stream `derive_seed(seed, j)`, so the first k outputs of a
    /// longer run equal a shorter run and chunked parallel generation
    /// cannot change the result.
    pub fn sample(&self, count: usize, seed: u64) -> Vec<Vec<f64>> {
        (0..count).map(|j| self.sample_at(seed, j as u64)).collect()
    }

    pub(crate) fn sample_at(&self, seed: u64, index: u64) -> Vec<f64> {
        let mut rng = CounterRng::new(derive_seed(seed, index));
        let z: Vec<f64> = (0..self.dim()).map(|_| rng.next_normal()).collect();
        let lz = self.chol.mul_vec(&z);
        lz.iter().zip(&self.mean).map(|(a, m)| a + m).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::std_normal_pdf;
    use proptest::prelude::*;

    fn std_mvn(n: usize) -> MvnDistribution {
        MvnDistribution::new(vec![0.0; n], SymMatrix::identity(n)).unwrap()
    }

    #[test]
    fn density_matches_scalar_pdf_in_1d() {
        let d = std_mvn(1);
        let got = d.density(&[0.0]).unwrap();
        assert!((got - 0.3989422804).abs() < 1e-10);
        assert!((got - std_normal_pdf(0.0).unwrap()).abs() < 1e-16);
    }

    #[test]
    fn density_is_maximal_at_the_mean() {
        let cov = SymMatrix::from_rows(&[vec![2.0, 0.3], vec![0.3, 1.0]]).unwrap();
        let d = MvnDistribution::new(vec![1.0, -2.0], cov).unwrap();
        let at_mean = d.density(&[1.0, -2.0]).unwrap();
        let mut rng = crate::rng::CounterRng::new(5);
        for _ in 0..100 {
            let x = [1.0 + 3.0 * rng.next_normal(), -2.0 + 3.0 * rng.next_normal()];
            assert!(d.density(&x).unwrap() <= at_mean);
        }
    }

    #[test]
    fn density_factorizes_under_identity_covariance() {
        let d = std_mvn(2);
        for &(x, y) in &[(0.0, 0.0), (1.0, -0.5), (2.3, 0.7)] {
            let joint = d.density(&[x, y]).unwrap();
            let product = std_normal_pdf(x).unwrap() * std_normal_pdf(y).unwrap();
            assert!((joint - product).abs() < 1e-14);
        }
    }

    #[test]
    fn density_dimension_mismatch() {
        assert!(matches!(
            std_mvn(2).density(&[1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn halfspace_mass_through_origin_is_half() {
        let d = std_mvn(2);
        let h = HalfSpace::new(vec![1.0, 0.0], 0.0).unwrap();
        assert_eq!(d.halfspace_mass(&h).unwrap().value(), 0.5);
    }

    #[test]
    fn halfspace_mass_shifted_mean() {
        // μ = (1, 0), Σ = I, α = e₁, β = 0 → Φ(-1)
        let d = MvnDistribution::new(vec![1.0, 0.0], SymMatrix::identity(2)).unwrap();
        let h = HalfSpace::new(vec![1.0, 0.0], 0.0).unwrap();
        let mass = d.halfspace_mass(&h).unwrap().value();
        assert!((mass - 0.15865525393145705).abs() < 1e-14);
        // Monte Carlo cross-check, 10⁷ draws
        let draws = d.sample(10_000_000, 7);
        let inside = draws.iter().filter(|x| x[0] < 0.0).count();
        let estimate = inside as f64 / 1e7;
        assert!((estimate - mass).abs() < 4e-4, "MC {estimate} vs {mass}");
    }

    #[test]
    fn halfspace_mass_scale_invariant() {
        let cov = SymMatrix::from_rows(&[vec![1.5, 0.4], vec![0.4, 0.9]]).unwrap();
        let d = MvnDistribution::new(vec![0.3, -0.8], cov).unwrap();
        let h1 = HalfSpace::new(vec![0.7, -0.2], 0.4).unwrap();
        let c = 3.7;
        let h2 = HalfSpace::new(vec![0.7 * c, -0.2 * c], 0.4 * c).unwrap();
        let m1 = d.halfspace_mass(&h1).unwrap().value();
        let m2 = d.halfspace_mass(&h2).unwrap().value();
        assert!((m1 - m2).abs() < 1e-15);
    }

    #[test]
    fn halfspace_mass_agrees_with_spectral_route() {
        let cov =
            SymMatrix::from_rows(&[vec![2.0, 0.5, 0.1], vec![0.5, 1.2, 0.3], vec![
                0.1, 0.3, 0.8,
            ]])
            .unwrap();
        let d = MvnDistribution::new(vec![0.2, -0.1, 0.5], cov).unwrap();
        let h = HalfSpace::new(vec![1.0, -0.5, 0.25], -0.3).unwrap();
        let a = d.halfspace_mass(&h).unwrap().value();
        let b = d.halfspace_mass_via_spectral(&h).unwrap().value();
        assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn zero_normal_is_rejected() {
        assert!(matches!(
            HalfSpace::new(vec![0.0, 0.0], 1.0),
            Err(Error::DegenerateHalfSpace)
        ));
    }

    #[test]
    fn sampler_is_deterministic_and_prefix_stable() {
        let cov = SymMatrix::from_rows(&[vec![1.0, 0.2], vec![0.2, 2.0]]).unwrap();
        let d = MvnDistribution::new(vec![5.0, -3.0], cov).unwrap();
        let a = d.sample(100, 42);
        let b = d.sample(100, 42);
        assert_eq!(a, b);
        let prefix = d.sample(10, 42);
        assert_eq!(&a[..10], &prefix[..]);
        let other = d.sample(10, 43);
        assert_ne!(prefix, other);
    }

    #[test]
    fn sample_moments_match_the_distribution() {
        let cov = SymMatrix::from_rows(&[vec![2.0, 0.6], vec![0.6, 1.0]]).unwrap();
        let d = MvnDistribution::new(vec![1.0, -2.0], cov).unwrap();
        let n = 1_000_000;
        let draws = d.sample(n, 11);
        let mut mean = [0.0f64; 2];
        for x in &draws {
            mean[0] += x[0];
            mean[1] += x[1];
        }
        mean[0] /= n as f64;
        mean[1] /= n as f64;
        // 5 σ_max / 10³ per coordinate
        let sigma_max = 2.0f64.sqrt();
        let tol = 5.0 * sigma_max / 1e3;
        assert!((mean[0] - 1.0).abs() < tol, "mean[0] = {}", mean[0]);
        assert!((mean[1] + 2.0).abs() < tol, "mean[1] = {}", mean[1]);

        let mut cov_hat = [[0.0f64; 2]; 2];
        for x in &draws {
            let c = [x[0] - mean[0], x[1] - mean[1]];
            for i in 0..2 {
                for j in 0..2 {
                    cov_hat[i][j] += c[i] * c[j];
                }
            }
        }
        let mut frob_err = 0.0;
        let mut frob = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                cov_hat[i][j] /= (n - 1) as f64;
                frob_err += (cov_hat[i][j] - d.cov().get(i, j)).powi(2);
                frob += d.cov().get(i, j).powi(2);
            }
        }
        assert!((frob_err / frob).sqrt() < 0.02, "relative Frobenius error too large");
    }

    proptest! {
        // complement identity: mass(H) + mass(Hᶜ) = 1 within 1e-15
        #[test]
        fn complement_masses_sum_to_one(
            a0 in -3.0f64..3.0,
            a1 in -3.0f64..3.0,
            beta in -5.0f64..5.0,
            m0 in -4.0f64..4.0,
            m1 in -4.0f64..4.0,
        ) {
            prop_assume!(a0.abs() + a1.abs() > 1e-3);
            let d = MvnDistribution::new(vec![m0, m1], SymMatrix::identity(2)).unwrap();
            let h = HalfSpace::new(vec![a0, a1], beta).unwrap();
            let total = d.halfspace_mass(&h).unwrap().value()
                + d.halfspace_mass(&h.complement()).unwrap().value();
            prop_assert!((total - 1.0).abs() < 1e-15);
        }
    }
}
