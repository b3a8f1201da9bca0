use crate::error::{check_len, Error, Result};
use crate::numerics::{dot, norm2, residual, spectral_norm_sq, Matrix};
use crate::projections::l1_project;
use crate::result::{SolverResult, Termination};

/// Projected gradient for `min ‖f − Φα‖₂²` subject to `‖α‖₁ ≤ τ`.
///
/// Fixed step `1/L` with `L` from 20 rounds of power iteration (relative
/// tolerance 1e−6). Stops once the projected-gradient mapping
/// `L‖α − Π(α − ∇/L)‖₂` is at most `tol`, or after `max_iter` steps.
/// `history` holds the objective `½‖f − Φα‖₂²` after every step; it never
/// increases.
pub fn lasso_pg_solve(phi: &Matrix, f: &[f64], tau: f64, tol: f64, max_iter: usize) -> Result<SolverResult> {
    check_len("lasso observation", phi.rows(), f.len())?;
    if !(tau >= 0.0) {
        return Err(Error::InvalidArgument(format!("tau must be >= 0, got {tau}")));
    }
    let n = phi.cols();
    let lipschitz = spectral_norm_sq(phi, 20, 1e-6);
    let mut alpha = vec![0.0; n];
    let mut r = residual(phi, &alpha, f);
    let mut history = Vec::new();
    let mut termination = Termination::MaxIterations;

    if lipschitz == 0.0 || tau == 0.0 {
        let rn = norm2(&r);
        return Ok(SolverResult {
            alpha,
            residual_l2: rn,
            residual: rn,
            iterations: 0,
            termination: Termination::TrivialInput,
            history,
        });
    }

    for _ in 0..max_iter {
        let g = phi.mul_t_vec(&r);
        let step: Vec<f64> = alpha.iter().zip(&g).map(|(a, gi)| a - gi / lipschitz).collect();
        let next = l1_project(&step, tau)?;
        let mapping = lipschitz * crate::numerics::distance2(&next, &alpha);
        alpha = next;
        r = residual(phi, &alpha, f);
        history.push(0.5 * dot(&r, &r));
        if mapping <= tol {
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
