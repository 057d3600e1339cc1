//! Dense symmetric positive-definite matrix algebra: Cholesky and spectral
//! factorizations, linear solves, and quadratic forms.
//!
//! Dimensions here are small (a handful up to a few hundred), so the
//! eigendecomposition uses cyclic Jacobi rotations, which are simple and
//! highly accurate on symmetric matrices.

use crate::error::{Error, Result};

/// Symmetric matrix, stored dense with exact entry-wise symmetry.
///
/// Ingestion averages (M + Mᵀ)/2; the largest asymmetry seen is recorded
/// and surfaced through [`SymMatrix::asymmetry_warning`].
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>, // row-major
    asymmetry: f64,
}

const ASYMMETRY_WARN: f64 = 1e-8;

impl SymMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            for &v in row {
                if !v.is_finite() {
                    return Err(Error::NonFinite { what: "matrix entry", value: v });
                }
            }
        }
        let mut data = vec![0.0; n * n];
        let mut asymmetry = 0.0f64;
        for i in 0..n {
            data[i * n + i] = rows[i][i];
            for j in (i + 1)..n {
                asymmetry = asymmetry.max((rows[i][j] - rows[j][i]).abs());
                let avg = 0.5 * (rows[i][j] + rows[j][i]);
                data[i * n + j] = avg;
                data[j * n + i] = avg;
            }
        }
        Ok(SymMatrix { dim: n, data, asymmetry })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        SymMatrix { dim: n, data, asymmetry: 0.0 }
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let n = entries.len();
        let mut data = vec![0.0; n * n];
        for (i, &v) in entries.iter().enumerate() {
            data[i * n + i] = v;
        }
        SymMatrix { dim: n, data, asymmetry: 0.0 }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// `Some(max asymmetry)` when the ingested matrix deviated from
    /// symmetry by more than 1e-8.
    pub fn asymmetry_warning(&self) -> Option<f64> {
        (self.asymmetry > ASYMMETRY_WARN).then_some(self.asymmetry)
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| self.data[i * self.dim..(i + 1) * self.dim].to_vec())
            .collect()
    }

    // Matrices with largest diagonal entry at or below zero cannot be
    // positive definite; the tolerance then rejects everything, as it
    // should.
    fn pd_tolerance(&self) -> f64 {
        let max_diag = (0..self.dim).map(|i| self.get(i, i)).fold(f64::MIN, f64::max);
        1e-12 * max_diag
    }

    fn check_dim(&self, v: &[f64]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        Ok(())
    }

    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(v)?;
        Ok((0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect())
    }

    /// vᵀ M v.
    pub fn quad_form(&self, v: &[f64]) -> Result<f64> {
        let mv = self.mul_vec(v)?;
        Ok(v.iter().zip(&mv).map(|(a, b)| a * b).sum())
    }

    /// vᵀ M⁻¹ v, evaluated as ‖L⁻¹v‖² so the result is nonnegative by
    /// construction and zero only for v = 0.
    pub fn inv_quad_form(&self, v: &[f64]) -> Result<f64> {
        self.check_dim(v)?;
        let chol = self.cholesky()?;
        let y = chol.forward_solve(v);
        Ok(y.iter().map(|x| x * x).sum())
    }

    /// Solves M u = v for positive-definite M.
    pub fn solve(&self, v: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(v)?;
        let chol = self.cholesky()?;
        Ok(chol.solve(v))
    }

    /// Cholesky factor L with M = L Lᵀ.
    pub fn cholesky(&self) -> Result<CholeskyFactor> {
        let n = self.dim;
        let tol = self.pd_tolerance();
        let mut l = vec![0.0; n * n];
        for j in 0..n {
            let mut pivot = self.get(j, j);
            for k in 0..j {
                pivot -= l[j * n + k] * l[j * n + k];
            }
            if pivot <= tol {
                return Err(Error::NotPositiveDefinite);
            }
            let diag = pivot.sqrt();
            l[j * n + j] = diag;
            for i in (j + 1)..n {
                let mut sum = self.get(i, j);
                for k in 0..j {
                    sum -= l[i * n + k] * l[j * n + k];
                }
                l[i * n + j] = sum / diag;
            }
        }
        Ok(CholeskyFactor { dim: n, l })
    }

    /// Spectral decomposition M = Q Λ Qᵀ with eigenvalues in
    /// non-increasing order (stable on input order for ties). Errors when
    /// any eigenvalue falls at or below the positive-definiteness
    /// tolerance.
    pub fn spectral(&self) -> Result<SpectralDecomposition> {
        let (mut lambda, mut q) = jacobi_eigen(self);
        let tol = self.pd_tolerance();
        // stable sort, descending eigenvalue
        let mut order: Vec<usize> = (0..self.dim).collect();
        order.sort_by(|&a, &b| lambda[b].partial_cmp(&lambda[a]).expect("finite eigenvalues"));
        lambda = order.iter().map(|&k| lambda[k]).collect();
        let n = self.dim;
        let mut sorted_q = vec![0.0; n * n];
        for (new_col, &old_col) in order.iter().enumerate() {
            for row in 0..n {
                sorted_q[row * n + new_col] = q[row * n + old_col];
            }
        }
        q = sorted_q;
        if lambda.iter().any(|&l| l <= tol) {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(SpectralDecomposition { dim: n, q, lambda })
    }
}

/// Lower-triangular Cholesky factor of a positive-definite matrix.
#[derive(Debug, Clone)]
pub struct CholeskyFactor {
    dim: usize,
    l: Vec<f64>, // row-major, upper part zero
}

impl CholeskyFactor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.l[i * self.dim + j]
    }

    /// Solves L y = b.
    pub fn forward_solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut sum = b[i];
            for k in 0..i {
                sum -= self.l[i * n + k] * y[k];
            }
            y[i] = sum / self.l[i * n + i];
        }
        y
    }

    /// Solves Lᵀ x = y.
    pub fn back_solve(&self, y: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut sum = y[i];
            for k in (i + 1)..n {
                sum -= self.l[k * n + i] * x[k];
            }
            x[i] = sum / self.l[i * n + i];
        }
        x
    }

    /// Solves (L Lᵀ) u = b.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        self.back_solve(&self.forward_solve(b))
    }

    /// L z — maps standard-normal coordinates onto the target covariance.
    pub fn mul_vec(&self, z: &[f64]) -> Vec<f64> {
        let n = self.dim;
        (0..n)
            .map(|i| (0..=i).map(|j| self.l[i * n + j] * z[j]).sum())
            .collect()
    }

    /// log det(M) = 2 Σ log Lᵢᵢ for the factored matrix M.
    pub fn log_det(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i).ln()).sum::<f64>() * 2.0
    }
}

/// Eigenvector/eigenvalue factorization M = Q Λ Qᵀ of a symmetric
/// positive-definite matrix; columns of Q are the eigenvectors.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    dim: usize,
    q: Vec<f64>, // row-major
    lambda: Vec<f64>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Eigenvalues, non-increasing.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.lambda
    }

    /// Entry (i, j) of Q — component i of eigenvector j.
    #[inline]
    pub fn q(&self, i: usize, j: usize) -> f64 {
        self.q[i * self.dim + j]
    }

    /// ‖√Λ Qᵀ a‖ computed through the factorization. Equals √(aᵀ M a);
    /// retained as the independent route for that identity.
    pub fn scaled_rotation_norm(&self, a: &[f64]) -> Result<f64> {
        if a.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: a.len() });
        }
        let mut sum = 0.0;
        for j in 0..self.dim {
            let qta: f64 = (0..self.dim).map(|i| self.q(i, j) * a[i]).sum();
            sum += self.lambda[j] * qta * qta;
        }
        Ok(sum.sqrt())
    }

    /// Q Λ Qᵀ, for reconstruction checks.
    pub fn reconstruct(&self) -> SymMatrix {
        let n = self.dim;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] =
                    (0..n).map(|k| self.q(i, k) * self.lambda[k] * self.q(j, k)).sum();
            }
        }
        SymMatrix { dim: n, data, asymmetry: 0.0 }
    }
}

// Cyclic Jacobi rotations (Numerical Recipes layout). Returns unsorted
// eigenvalues and the accumulated rotation matrix (columns are
// eigenvectors).
fn jacobi_eigen(m: &SymMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = m.dim;
    let mut a = m.data.clone();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let mut d: Vec<f64> = (0..n).map(|i| m.get(i, i)).collect();
    let mut b = d.clone();
    let mut z = vec![0.0; n];
    if n == 1 {
        return (d, v);
    }

    for sweep in 0..64 {
        let off: f64 =
            (0..n - 1).map(|p| (p + 1..n).map(|q| a[p * n + q].abs()).sum::<f64>()).sum();
        if off == 0.0 {
            break;
        }
        let thresh = if sweep < 3 { 0.2 * off / (n * n) as f64 } else { 0.0 };
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let g = 100.0 * a[p * n + q].abs();
                if sweep > 3
                    && d[p].abs() + g == d[p].abs()
                    && d[q].abs() + g == d[q].abs()
                {
                    a[p * n + q] = 0.0;
                } else if a[p * n + q].abs() > thresh {
                    let h = d[q] - d[p];
                    let t = if h.abs() + g == h.abs() {
                        a[p * n + q] / h
                    } else {
                        let theta = 0.5 * h / a[p * n + q];
                        let mut t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                        if theta < 0.0 {
                            t = -t;
                        }
                        t
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let tau = s / (1.0 + c);
                    let h = t * a[p * n + q];
                    z[p] -= h;
                    z[q] += h;
                    d[p] -= h;
                    d[q] += h;
                    a[p * n + q] = 0.0;
                    let rotate = |m: &mut [f64], i: usize, j: usize, k: usize, l: usize| {
                        let g = m[i * n + j];
                        let h = m[k * n + l];
                        m[i * n + j] = g - s * (h + g * tau);
                        m[k * n + l] = h + s * (g - h * tau);
                    };
                    for j in 0..p {
                        rotate(&mut a, j, p, j, q);
                    }
                    for j in (p + 1)..q {
                        rotate(&mut a, p, j, j, q);
                    }
                    for j in (q + 1)..n {
                        rotate(&mut a, p, j, q, j);
                    }
                    for j in 0..n {
                        rotate(&mut v, j, p, j, q);
                    }
                }
            }
        }
        for i in 0..n {
            b[i] += z[i];
            d[i] = b[i];
            z[i] = 0.0;
        }
    }
    (d, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::CounterRng;

    fn approx(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn spectral_of_identity() {
        let s = SymMatrix::identity(3).spectral().unwrap();
        for &l in s.eigenvalues() {
            assert!(approx(l, 1.0, 1e-14));
        }
        let r = s.reconstruct();
        for i in 0..3 {
            for j in 0..3 {
                assert!(approx(r.get(i, j), if i == j { 1.0 } else { 0.0 }, 1e-12));
            }
        }
    }

    #[test]
    fn spectral_of_diagonal_sorts_descending() {
        let s = SymMatrix::diagonal(&[4.0, 9.0]).spectral().unwrap();
        assert!(approx(s.eigenvalues()[0], 9.0, 1e-13));
        assert!(approx(s.eigenvalues()[1], 4.0, 1e-13));
    }

    #[test]
    fn spectral_two_by_two_hand_derived() {
        // [[2,1],[1,2]]: characteristic polynomial λ² - 4λ + 3 → {3, 1}.
        let m = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let s = m.spectral().unwrap();
        assert!(approx(s.eigenvalues()[0], 3.0, 1e-12));
        assert!(approx(s.eigenvalues()[1], 1.0, 1e-12));
        let r = s.reconstruct();
        for i in 0..2 {
            for j in 0..2 {
                assert!(approx(r.get(i, j), m.get(i, j), 1e-10));
            }
        }
        // orthogonality of Q
        for a in 0..2 {
            for b in 0..2 {
                let dot: f64 = (0..2).map(|i| s.q(i, a) * s.q(i, b)).sum();
                assert!(approx(dot, if a == b { 1.0 } else { 0.0 }, 1e-10));
            }
        }
    }

    #[test]
    fn spectral_rejects_indefinite() {
        let m = SymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert!(matches!(m.spectral(), Err(Error::NotPositiveDefinite)));
    }

    #[test]
    fn cholesky_identity_and_diagonal() {
        let c = SymMatrix::identity(4).cholesky().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(c.get(i, j), if i == j { 1.0 } else { 0.0 });
            }
        }
        let c = SymMatrix::diagonal(&[4.0, 9.0]).cholesky().unwrap();
        assert_eq!(c.get(0, 0), 2.0);
        assert_eq!(c.get(1, 1), 3.0);
    }

    #[test]
    fn cholesky_reconstructs() {
        let m = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let c = m.cholesky().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let r: f64 = (0..2).map(|k| c.get(i, k) * c.get(j, k)).sum();
                assert!(approx(r, m.get(i, j), 1e-12));
            }
        }
    }

    #[test]
    fn cholesky_rejects_non_pd() {
        let m = SymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert!(matches!(m.cholesky(), Err(Error::NotPositiveDefinite)));
        let zero = SymMatrix::diagonal(&[0.0, 0.0]);
        assert!(matches!(zero.cholesky(), Err(Error::NotPositiveDefinite)));
    }

    #[test]
    fn solve_identity_and_diagonal() {
        let v = vec![3.0, -1.0, 7.0];
        assert_eq!(SymMatrix::identity(3).solve(&v).unwrap(), v);
        let u = SymMatrix::diagonal(&[2.0, 4.0]).solve(&[2.0, 4.0]).unwrap();
        assert!((u[0] - 1.0).abs() < 1e-14 && (u[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn solve_random_spd_residual() {
        // fixed SPD 5x5 built as B Bᵀ + I from a seeded stream
        let mut rng = CounterRng::new(17);
        let n = 5;
        let b: Vec<f64> = (0..n * n).map(|_| rng.next_normal()).collect();
        let mut rows = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                rows[i][j] = (0..n).map(|k| b[i * n + k] * b[j * n + k]).sum::<f64>()
                    + if i == j { 1.0 } else { 0.0 };
            }
        }
        let m = SymMatrix::from_rows(&rows).unwrap();
        let v: Vec<f64> = (0..n).map(|_| rng.next_normal()).collect();
        let u = m.solve(&v).unwrap();
        let mu = m.mul_vec(&u).unwrap();
        let vmax = v.iter().fold(1.0f64, |acc, x| acc.max(x.abs()));
        let resid = mu.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0f64, f64::max);
        assert!(resid / vmax < 1e-10, "residual {resid}");
    }

    #[test]
    fn solve_dimension_mismatch() {
        assert!(matches!(
            SymMatrix::identity(3).solve(&[1.0, 2.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inv_quad_form_examples() {
        let v = vec![1.0, 2.0, 2.0];
        let q = SymMatrix::identity(3).inv_quad_form(&v).unwrap();
        assert!(approx(q, 9.0, 1e-14));
        let q = SymMatrix::diagonal(&[4.0]).inv_quad_form(&[2.0]).unwrap();
        assert!(approx(q, 1.0, 1e-15));
        assert_eq!(SymMatrix::identity(2).inv_quad_form(&[0.0, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn inv_quad_form_agrees_with_solve_route() {
        let m = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let v = [0.3, -1.7];
        let direct = m.inv_quad_form(&v).unwrap();
        let u = m.solve(&v).unwrap();
        let via_solve: f64 = v.iter().zip(&u).map(|(a, b)| a * b).sum();
        assert!(approx(direct, via_solve, 1e-12));
    }

    #[test]
    fn scaled_rotation_norm_matches_quad_form() {
        let m = SymMatrix::from_rows(&[vec![3.0, 1.0, 0.5], vec![1.0, 2.0, 0.2], vec![
            0.5, 0.2, 1.5,
        ]])
        .unwrap();
        let s = m.spectral().unwrap();
        let a = [0.7, -1.1, 0.4];
        let via_spectral = s.scaled_rotation_norm(&a).unwrap();
        let via_form = m.quad_form(&a).unwrap().sqrt();
        assert!(approx(via_spectral, via_form, 1e-12));
    }

    #[test]
    fn asymmetry_is_averaged_and_warned() {
        let m = SymMatrix::from_rows(&[vec![1.0, 0.5 + 1e-6], vec![0.5, 1.0]]).unwrap();
        assert_eq!(m.get(0, 1), m.get(1, 0));
        assert!(approx(m.get(0, 1), 0.5 + 5e-7, 1e-12));
        assert!(m.asymmetry_warning().is_some());
        let sym = SymMatrix::from_rows(&[vec![1.0, 0.5], vec![0.5, 1.0]]).unwrap();
        assert!(sym.asymmetry_warning().is_none());
    }

    #[test]
    fn from_rows_rejects_bad_input() {
        assert!(SymMatrix::from_rows(&[]).is_err());
        assert!(SymMatrix::from_rows(&[vec![1.0, 2.0]]).is_err());
        assert!(SymMatrix::from_rows(&[vec![f64::NAN]]).is_err());
    }

    #[test]
    fn one_by_one_matrix() {
        let m = SymMatrix::diagonal(&[4.0]);
        let s = m.spectral().unwrap();
        assert_eq!(s.eigenvalues(), &[4.0]);
        assert_eq!(m.cholesky().unwrap().get(0, 0), 2.0);
        assert_eq!(m.solve(&[8.0]).unwrap(), vec![2.0]);
    }
}
