use super::{relative_change_small, residual_norm, IterateTrace, PursuitConfig, PursuitOutcome};
use crate::error::Result;
use crate::numerics::{residual, restricted_lsq, IndexSet, Matrix};
use crate::projections::{top_k_among, top_k_magnitude};
use crate::result::{SolverResult, Termination};

/// Subspace Pursuit.
///
/// Starting from `α₀ = 0`, each iteration merges the current support with
/// the `k` largest entries of `|Φᵀ(f − Φα_i)|`, solves least squares on the
/// merged (at most `2k`) support, keeps the `k` largest coefficients and
/// re-solves least squares on them. The first iteration therefore reproduces
/// the classical initialization from the top-k of `|Φᵀf|`.
///
/// Stops when the relative iterate change drops below the tolerance, when
/// the residual grows (returning the previous iterate), or after
/// `max_iterations`. `cfg.tau` is ignored.
pub fn sp_solve(phi: &Matrix, f: &[f64], cfg: &PursuitConfig) -> Result<PursuitOutcome> {
    cfg.validate(phi, f)?;
    let n = phi.cols();
    let mut trace = IterateTrace::start(cfg, n);
    let mut alpha = vec![0.0; n];
    let mut current_residual = crate::numerics::norm2(f);
    let mut history = Vec::new();
    let mut termination = Termination::MaxIterations;

    for _ in 0..cfg.max_iterations {
        let r = residual(phi, &alpha, f);
        let correlation = phi.mul_t_vec(&r);
        let extended = IndexSet::support_of(&alpha).union(&top_k_magnitude(&correlation, cfg.k));

        let v = restricted_lsq(phi, f, &extended, &cfg.lsq)?;
        let selected = top_k_among(&v, cfg.k, extended.iter());
        let mut gamma = vec![0.0; n];
        selected.iter().for_each(|j| gamma[j] = v[j]);
        let selection_residual = residual_norm(phi, &gamma, f);
        let next = restricted_lsq(phi, f, &selected, &cfg.lsq)?;
        let next_residual = residual_norm(phi, &next, f);

        if next_residual > current_residual {
            termination = Termination::ResidualIncreased;
            break;
        }
        trace.push(cfg, &next, &alpha, extended.len(), next_residual, selection_residual);
        history.push(next_residual);
        let done = relative_change_small(&next, &alpha, cfg.tolerance);
        alpha = next;
        current_residual = next_residual;
        if done {
            termination = Termination::Converged;
            break;
        }
    }

    Ok(PursuitOutcome {
        result: SolverResult {
            residual_l2: current_residual,
            residual: current_residual,
            iterations: history.len(),
            termination,
            history,
            alpha,
        },
        trace,
    })
}
