use super::inner::LIPSCHITZ_MARGIN;
use super::relative_change_small;
use crate::error::{check_len, Error, Result};
use crate::numerics::{norm2, residual, spectral_norm_sq, Matrix};
use crate::projections::hard_threshold;
use crate::result::{SolverResult, Termination};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IhtSettings {
    pub k: usize,
    /// Gradient step; `None` uses `1/L` with `L` a power-iteration estimate
    /// of `‖Φ‖₂²` (200 rounds, 5% margin).
    pub step: Option<f64>,
    pub max_iter: usize,
    /// Relative iterate change that counts as converged.
    pub tol: f64,
}

impl IhtSettings {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            step: None,
            max_iter: 500,
            tol: 1e-6,
        }
    }
}

/// Iterative hard thresholding: `α ← H_k(α − step·Φᵀ(Φα − f))`.
pub fn iht_solve(phi: &Matrix, f: &[f64], settings: &IhtSettings) -> Result<SolverResult> {
    check_len("iht observation", phi.rows(), f.len())?;
    if settings.k == 0 || settings.k > phi.cols() {
        return Err(Error::InvalidArgument(format!(
            "sparsity k = {} must satisfy 1 <= k <= N = {}",
            settings.k,
            phi.cols()
        )));
    }
    let step = match settings.step {
        Some(s) if s > 0.0 && s.is_finite() => s,
        Some(s) => return Err(Error::InvalidArgument(format!("IHT step must be positive, got {s}"))),
        None => {
            let l = spectral_norm_sq(phi, 200, 1e-10) * LIPSCHITZ_MARGIN;
            if l == 0.0 {
                1.0
            } else {
                1.0 / l
            }
        }
    };
    let mut alpha = vec![0.0; phi.cols()];
    let mut r = residual(phi, &alpha, f);
    let mut history = Vec::new();
    let mut termination = Termination::MaxIterations;
    for _ in 0..settings.max_iter {
        let g = phi.mul_t_vec(&r);
        let moved: Vec<f64> = alpha.iter().zip(&g).map(|(a, gi)| a - step * gi).collect();
        let next = hard_threshold(&moved, settings.k);
        let done = relative_change_small(&next, &alpha, settings.tol);
        alpha = next;
        r = residual(phi, &alpha, f);
        history.push(norm2(&r));
        if done {
            termination = Termination::Converged;
            break;
        }
    }
    let rn = norm2(&r);
    Ok(SolverResult {
        alpha,
        residual_l2: rn,
        residual: rn,
        iterations: history.len(),
        termination,
        history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_with_unit_step_is_one_hard_threshold() {
        let phi = Matrix::identity(4);
        let f = [0.5, -3.0, 2.0, 0.1];
        let mut s = IhtSettings::new(2);
        s.step = Some(1.0);
        let out = iht_solve(&phi, &f, &s).unwrap();
        assert_eq!(out.alpha, vec![0.0, -3.0, 2.0, 0.0]);
        // the second step confirms the fixed point
        assert_eq!(out.iterations, 2);
    }

    #[test]
    fn zero_observation_gives_zero() {
        let phi = Matrix::from_rows(&[vec![1.0, 2.0, 3.0], vec![0.0, 1.0, -1.0]]).unwrap();
        let out = iht_solve(&phi, &[0.0, 0.0], &IhtSettings::new(1)).unwrap();
        assert_eq!(out.alpha, vec![0.0; 3]);
    }

    #[test]
    fn rejects_bad_settings() {
        let phi = Matrix::identity(2);
        assert!(iht_solve(&phi, &[1.0, 1.0], &IhtSettings::new(3)).is_err());
        let mut s = IhtSettings::new(1);
        s.step = Some(0.0);
        assert!(iht_solve(&phi, &[1.0, 1.0], &s).is_err());
    }
}
