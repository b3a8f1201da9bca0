use super::{axpy, dot, IndexSet, Matrix};
use crate::error::{check_len, Error, Result};

/// Stopping rule for [`restricted_lsq`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LsqSettings {
    /// Target for `‖A_Sᵀ(f − A_S v)‖₂`.
    pub tol: f64,
    /// Iteration cap; `None` means `4·|S|`.
    pub max_iter: Option<usize>,
}

impl Default for LsqSettings {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            max_iter: None,
        }
    }
}

/// Least squares restricted to the columns in `support`.
///
/// Runs conjugate gradients on the normal equations of the column
/// submatrix (CGLS form, so `A_SᵀA_S` is never formed). The returned vector
/// has length `cols(a)` and is exactly zero off `support`. An empty support
/// yields the zero vector. Rank-deficient submatrices are handled by CG's
/// natural minimum-norm behaviour from a zero start.
pub fn restricted_lsq(
    a: &Matrix,
    f: &[f64],
    support: &IndexSet,
    settings: &LsqSettings,
) -> Result<Vec<f64>> {
    check_len("restricted_lsq observation", a.rows(), f.len())?;
    if !(settings.tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "restricted_lsq tolerance must be positive, got {}",
            settings.tol
        )));
    }
    if let Some(max) = support.max_index() {
        if max >= a.cols() {
            return Err(Error::InvalidArgument(format!(
                "support index {max} out of range for {} columns",
                a.cols()
            )));
        }
    }
    let mut out = vec![0.0; a.cols()];
    if support.is_empty() {
        return Ok(out);
    }
    let sub = a.select_columns(support);
    let max_iter = settings.max_iter.unwrap_or(4 * support.len());
    let coef = cgls(&sub, f, settings.tol, max_iter);
    for (j, v) in support.iter().zip(coef) {
        out[j] = v;
    }
    Ok(out)
}

/// CGLS from a zero start on a (small, dense) matrix.
pub(crate) fn cgls(a: &Matrix, f: &[f64], tol: f64, max_iter: usize) -> Vec<f64> {
    let n = a.cols();
    let mut x = vec![0.0; n];
    let mut r = f.to_vec();
    let mut s = a.mul_t_vec(&r);
    let mut p = s.clone();
    let mut gamma = dot(&s, &s);
    for _ in 0..max_iter {
        if gamma.sqrt() <= tol {
            break;
        }
        let q = a.mul_vec(&p);
        let qq = dot(&q, &q);
        if qq == 0.0 {
            break;
        }
        let step = gamma / qq;
        axpy(step, &p, &mut x);
        axpy(-step, &q, &mut r);
        s = a.mul_t_vec(&r);
        let gamma_next = dot(&s, &s);
        let beta = gamma_next / gamma;
        for (pi, si) in p.iter_mut().zip(&s) {
            *pi = si + beta * *pi;
        }
        gamma = gamma_next;
    }
    x
}

/// Power-iteration estimate of `‖A‖₂²` (largest eigenvalue of `AᵀA`).
///
/// Starts from the normalized all-ones vector and stops after `max_iter`
/// rounds or when the Rayleigh quotient changes by at most `rel_tol`
/// relatively. The estimate never exceeds the true value.
pub fn spectral_norm_sq(a: &Matrix, max_iter: usize, rel_tol: f64) -> f64 {
    let n = a.cols();
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut estimate = 0.0;
    for _ in 0..max_iter {
        let av = a.mul_vec(&v);
        let w = a.mul_t_vec(&av);
        let next = dot(&v, &w);
        let wn = dot(&w, &w).sqrt();
        if wn == 0.0 {
            return 0.0;
        }
        v.iter_mut().zip(&w).for_each(|(vi, wi)| *vi = wi / wn);
        let done = (next - estimate).abs() <= rel_tol * next.abs();
        estimate = next;
        if done {
            break;
        }
    }
    estimate
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::norm2;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Normal equations solved by Gaussian elimination with partial pivoting.
    fn normal_equations_oracle(a: &Matrix, f: &[f64], support: &[usize]) -> Vec<f64> {
        let s = support.len();
        let mut aug = vec![vec![0.0; s + 1]; s];
        for (r, &i) in support.iter().enumerate() {
            for (c, &j) in support.iter().enumerate() {
                aug[r][c] = (0..a.rows()).map(|m| a.get(m, i) * a.get(m, j)).sum();
            }
            aug[r][s] = (0..a.rows()).map(|m| a.get(m, i) * f[m]).sum();
        }
        for col in 0..s {
            let piv = (col..s)
                .max_by(|&x, &y| aug[x][col].abs().partial_cmp(&aug[y][col].abs()).unwrap())
                .unwrap();
            aug.swap(col, piv);
            for row in 0..s {
                if row != col {
                    let factor = aug[row][col] / aug[col][col];
                    for c in col..=s {
                        aug[row][c] -= factor * aug[col][c];
                    }
                }
            }
        }
        (0..s).map(|r| aug[r][s] / aug[r][r]).collect()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Matrix {
        let data = (0..m * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        Matrix::new(m, n, data).unwrap()
    }

    #[test]
    fn orthonormal_columns() {
        let a = Matrix::identity(3);
        let v = restricted_lsq(&a, &[1.0, 2.0, 3.0], &IndexSet::from_unsorted(vec![0, 2]), &LsqSettings::default()).unwrap();
        assert_eq!(v, vec![1.0, 0.0, 3.0]);
    }

    #[test]
    fn one_dimensional_closed_form() {
        let a = Matrix::from_rows(&[vec![1.0], vec![1.0]]).unwrap();
        let v = restricted_lsq(&a, &[1.0, 3.0], &IndexSet::from_unsorted(vec![0]), &LsqSettings::default()).unwrap();
        // (Aᵀf)/(AᵀA) = 4/2
        assert!((v[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn empty_support_is_zero() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![0.5, -1.0]]).unwrap();
        let v = restricted_lsq(&a, &[1.0, 1.0], &IndexSet::empty(), &LsqSettings::default()).unwrap();
        assert_eq!(v, vec![0.0, 0.0]);
    }

    #[test]
    fn rejects_bad_inputs() {
        let a = Matrix::identity(2);
        let s = IndexSet::from_unsorted(vec![0]);
        assert!(restricted_lsq(&a, &[1.0], &s, &LsqSettings::default()).is_err());
        let bad_tol = LsqSettings { tol: 0.0, max_iter: None };
        assert!(restricted_lsq(&a, &[1.0, 1.0], &s, &bad_tol).is_err());
        let out_of_range = IndexSet::from_unsorted(vec![5]);
        assert!(restricted_lsq(&a, &[1.0, 1.0], &out_of_range, &LsqSettings::default()).is_err());
    }

    #[test]
    fn singular_submatrix_does_not_crash() {
        // duplicated column
        let a = Matrix::from_rows(&[vec![1.0, 1.0], vec![2.0, 2.0], vec![0.0, 0.0]]).unwrap();
        let v = restricted_lsq(&a, &[1.0, 2.0, 3.0], &IndexSet::from_unsorted(vec![0, 1]), &LsqSettings::default()).unwrap();
        assert!(v.iter().all(|x| x.is_finite()));
        // minimum-norm solution splits the weight evenly
        assert!((v[0] - 0.5).abs() < 1e-12 && (v[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn matches_normal_equations_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..40 {
            let m = 20 + trial % 7;
            let n = 30;
            let a = random_matrix(&mut rng, m, n);
            let f: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let size = 1 + trial % 8;
            let mut idx: Vec<usize> = (0..n).collect();
            for i in 0..size {
                let j = rng.gen_range(i..n);
                idx.swap(i, j);
            }
            let support = IndexSet::from_unsorted(idx[..size].to_vec());
            let settings = LsqSettings::default();
            let v = restricted_lsq(&a, &f, &support, &settings).unwrap();
            let expect = normal_equations_oracle(&a, &f, support.as_slice());
            for (j, e) in support.iter().zip(&expect) {
                assert!((v[j] - e).abs() < 1e-8, "trial {trial}: {} vs {e}", v[j]);
            }
            for j in 0..n {
                if !support.contains(j) {
                    assert_eq!(v[j], 0.0);
                }
            }
            // first-order optimality on the support
            let r: Vec<f64> = (0..m).map(|i| f[i] - dot(a.row(i), &v)).collect();
            let g: Vec<f64> = support.iter().map(|j| (0..m).map(|i| a.get(i, j) * r[i]).sum()).collect();
            assert!(norm2(&g) <= settings.tol, "gradient {}", norm2(&g));
        }
    }

    #[test]
    fn power_iteration_on_diagonal() {
        let a = Matrix::from_rows(&[vec![3.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let l = spectral_norm_sq(&a, 100, 1e-12);
        assert!((l - 9.0).abs() < 1e-8);
        let l20 = spectral_norm_sq(&a, 20, 1e-6);
        assert!(l20 <= 9.0 + 1e-12 && l20 > 8.9);
    }
}
