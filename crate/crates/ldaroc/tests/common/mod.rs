//! Shared generators for the integration suites: a deterministic test
//! RNG, random orthogonal/SPD matrices with controlled conditioning,
//! random non-degenerate models, and Monte Carlo baselines built purely
//! from the public API.

use ldaroc::{empirical_roc, score_dataset, simulate_dataset, trapezoid_auc, LdaModel, SymMatrix};

/// Test-local splitmix64; the library's generator is intentionally not
/// public.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9_007_199_254_740_992.0)
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn normal(&mut self) -> f64 {
        let u1 = self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }
}

/// Random orthogonal matrix via Gram-Schmidt (with one re-orthogonalization
/// pass) on a Gaussian matrix. Row-major.
pub fn random_orthogonal(n: usize, rng: &mut TestRng) -> Vec<Vec<f64>> {
    let mut q: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| rng.normal()).collect()).collect();
    for i in 0..n {
        for _ in 0..2 {
            for j in 0..i {
                let dot: f64 = (0..n).map(|k| q[i][k] * q[j][k]).sum();
                for k in 0..n {
                    q[i][k] -= dot * q[j][k];
                }
            }
        }
        let norm: f64 = q[i].iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in q[i].iter_mut() {
            *v /= norm;
        }
    }
    // transpose so columns are the orthonormal set
    (0..n).map(|i| (0..n).map(|j| q[j][i]).collect()).collect()
}

/// Random SPD matrix Q Λ Qᵀ with eigenvalues log-spaced to the requested
/// condition number.
pub fn random_spd(n: usize, condition: f64, rng: &mut TestRng) -> SymMatrix {
    let q = random_orthogonal(n, rng);
    let scale = rng.range(0.5, 2.0);
    let lambdas: Vec<f64> = (0..n)
        .map(|i| {
            let t = if n == 1 { 0.0 } else { i as f64 / (n - 1) as f64 };
            scale * condition.powf(-t)
        })
        .collect();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| q[i][k] * lambdas[k] * q[j][k]).sum())
                .collect()
        })
        .collect();
    SymMatrix::from_rows(&rows).expect("constructed SPD matrix")
}

/// Random invertible matrix in SVD form U diag(s) Vᵀ together with its
/// inverse V diag(1/s) Uᵀ. Row-major.
pub fn random_invertible_with_inverse(
    n: usize,
    rng: &mut TestRng,
) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let u = random_orthogonal(n, rng);
    let v = random_orthogonal(n, rng);
    let s: Vec<f64> =
        (0..n).map(|_| rng.range(0.3, 3.0) * if rng.uniform() < 0.5 { -1.0 } else { 1.0 }).collect();
    let a = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| u[i][k] * s[k] * v[j][k]).sum())
                .collect()
        })
        .collect();
    let a_inv = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| v[i][k] / s[k] * u[j][k]).sum())
                .collect()
        })
        .collect();
    (a, a_inv)
}

pub fn mat_vec(a: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    a.iter().map(|row| row.iter().zip(x).map(|(r, v)| r * v).sum()).collect()
}

/// A Σ Aᵀ for row-major A and symmetric Σ.
pub fn congruence(a: &[Vec<f64>], sigma: &SymMatrix) -> SymMatrix {
    let n = sigma.dim();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| {
                            a[i][k] * (0..n).map(|l| sigma.get(k, l) * a[j][l]).sum::<f64>()
                        })
                        .sum()
                })
                .collect()
        })
        .collect();
    SymMatrix::from_rows(&rows).expect("congruent matrix")
}

/// Random non-degenerate model with n features and covariance condition
/// number at most `condition`. The separation is kept in (0.1, 6) so the
/// brute-force oracles stay sharp: far beyond that, J and AUC saturate to
/// 1 at double precision and a grid search has nothing left to resolve.
pub fn random_model(n: usize, condition: f64, rng: &mut TestRng) -> LdaModel {
    loop {
        let mu0: Vec<f64> = (0..n).map(|_| rng.range(-2.0, 2.0)).collect();
        let mu1: Vec<f64> = (0..n).map(|_| rng.range(-2.0, 2.0)).collect();
        let sigma = random_spd(n, rng.range(1.0, condition), rng);
        let p0 = rng.range(0.15, 0.85);
        let model = LdaModel::from_params(mu0, mu1, sigma, p0).expect("valid random model");
        if model.delta() > 0.1 && model.delta() < 6.0 {
            return model;
        }
    }
}

/// Monte Carlo (FPR, TPR) at θ from `count` simulated draws.
#[allow(dead_code)]
pub fn mc_rates(model: &LdaModel, theta: f64, count: usize, seed: u64) -> (f64, f64) {
    let data = simulate_dataset(model, count, seed).expect("simulation");
    let scored = score_dataset(model, &data).expect("scoring");
    let (mut fp, mut n0, mut tp, mut n1) = (0usize, 0usize, 0usize, 0usize);
    for (&s, &l) in scored.scores().iter().zip(scored.labels()) {
        if l == 0 {
            n0 += 1;
            if s > theta {
                fp += 1;
            }
        } else {
            n1 += 1;
            if s > theta {
                tp += 1;
            }
        }
    }
    (fp as f64 / n0 as f64, tp as f64 / n1 as f64)
}

/// Monte Carlo AUC: trapezoid over the empirical ROC of `count` scored
/// draws.
#[allow(dead_code)]
pub fn mc_auc(model: &LdaModel, count: usize, seed: u64) -> f64 {
    let data = simulate_dataset(model, count, seed).expect("simulation");
    let scored = score_dataset(model, &data).expect("scoring");
    trapezoid_auc(&empirical_roc(&scored).expect("both classes present"))
}
