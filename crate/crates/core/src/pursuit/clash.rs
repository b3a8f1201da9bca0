use super::inner::l1_constrained_lsq;
use super::{relative_change_small, residual_norm, IterateTrace, PursuitConfig, PursuitOutcome};
use crate::error::{Error, Result};
use crate::numerics::{residual, restricted_lsq, IndexSet, Matrix};
use crate::projections::top_k_among;
use crate::result::{SolverResult, Termination};

/// Hard thresholding with an ℓ1 budget.
///
/// Iteration `i`, starting from `α₀ = 0`:
///
/// 1. active set expansion: `Â = supp(α_i) ∪` the `k` largest entries of
///    the gradient `Φᵀ(Φα_i − f)` outside `supp(α_i)`;
/// 2. descent: `v = argmin ‖f − Φv‖₂²` over `supp(v) ⊆ Â`, `‖v‖₁ ≤ τ`;
/// 3. selection: keep the `k` largest entries of `v`;
/// 4. de-bias: re-solve step 2's problem on the selected support.
///
/// Every iterate satisfies `‖α‖₀ ≤ k` and `‖α‖₁ ≤ τ`. With `τ = ∞` the
/// restricted solves are plain least squares and the iterates coincide with
/// [`super::sp_solve`]'s.
pub fn clash_solve(phi: &Matrix, f: &[f64], cfg: &PursuitConfig) -> Result<PursuitOutcome> {
    cfg.validate(phi, f)?;
    if cfg.tau == 0.0 {
        return Err(Error::InvalidArgument("CLASH needs tau > 0".into()));
    }
    let n = phi.cols();
    let unconstrained = cfg.tau.is_infinite();
    let solve = |support: &IndexSet, warm: &[f64]| -> Result<Vec<f64>> {
        if unconstrained {
            restricted_lsq(phi, f, support, &cfg.lsq)
        } else {
            l1_constrained_lsq(phi, f, support, cfg.tau, warm, &cfg.inner)
        }
    };

    let mut trace = IterateTrace::start(cfg, n);
    let mut alpha = vec![0.0; n];
    let mut history = Vec::new();
    let mut termination = Termination::MaxIterations;

    for _ in 0..cfg.max_iterations {
        let r = residual(phi, &alpha, f);
        let gradient = phi.mul_t_vec(&r);
        let current = IndexSet::support_of(&alpha);
        let fresh = top_k_among(&gradient, cfg.k, (0..n).filter(|j| !current.contains(*j)));
        let extended = current.union(&fresh);

        let v = solve(&extended, &alpha)?;
        let selected = top_k_among(&v, cfg.k, extended.iter());
        let mut gamma = vec![0.0; n];
        selected.iter().for_each(|j| gamma[j] = v[j]);
        let selection_residual = residual_norm(phi, &gamma, f);

        let next = solve(&selected, &gamma)?;
        let next_residual = residual_norm(phi, &next, f);
        trace.push(cfg, &next, &alpha, extended.len(), next_residual, selection_residual);
        history.push(next_residual);
        let done = relative_change_small(&next, &alpha, cfg.tolerance);
        alpha = next;
        if done {
            termination = Termination::Converged;
            break;
        }
    }

    let residual_l2 = residual_norm(phi, &alpha, f);
    Ok(PursuitOutcome {
        result: SolverResult {
            residual_l2,
            residual: residual_l2,
            iterations: history.len(),
            termination,
            history,
            alpha,
        },
        trace,
    })
}
