//! Hard-thresholding solvers and the ℓ1-constrained least-squares baseline.
//!
//! * [`sp_solve`]: Subspace Pursuit.
//! * [`clash_solve`]: Subspace Pursuit with an ℓ1 budget enforced in the
//!   descent and de-bias steps, so every iterate lies in
//!   `{‖α‖₀ ≤ k, ‖α‖₁ ≤ τ}`.
//! * [`iht_solve`]: fixed-step iterative hard thresholding.
//! * [`lasso_pg_solve`]: projected gradient on the ℓ1 ball.
//!
//! All top-k selections break ties toward the lowest index.

mod clash;
mod contraction;
mod iht;
mod inner;
mod lasso;
mod sp;

pub use clash::clash_solve;
pub use contraction::{contraction_check, ContractionReport};
pub use iht::{iht_solve, IhtSettings};
pub use inner::{l1_constrained_lsq, InnerSettings};
pub use lasso::lasso_pg_solve;
pub use sp::sp_solve;

use crate::error::{Error, Result};
use crate::numerics::{distance2, norm2, IndexSet, LsqSettings, Matrix};
use crate::result::SolverResult;

/// Settings shared by the pursuit solvers.
#[derive(Debug, Clone, PartialEq)]
pub struct PursuitConfig {
    pub k: usize,
    /// ℓ1 budget; `f64::INFINITY` disables it.
    pub tau: f64,
    /// Stop once `‖α_{i+1} − α_i‖₂ ≤ tolerance · max(‖α_{i+1}‖₂, 1e−12)`.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// ℓ1-constrained restricted solves (CLASH steps 2 and 4).
    pub inner: InnerSettings,
    /// Unconstrained restricted solves.
    pub lsq: LsqSettings,
    /// Keep a copy of every iterate in the trace.
    pub record_iterates: bool,
    /// Ground truth for the trace's distance column.
    pub truth: Option<Vec<f64>>,
}

impl PursuitConfig {
    pub fn new(k: usize, tau: f64) -> Self {
        Self {
            k,
            tau,
            tolerance: 1e-6,
            max_iterations: 100,
            inner: InnerSettings::default(),
            lsq: LsqSettings::default(),
            record_iterates: false,
            truth: None,
        }
    }

    pub fn with_truth(mut self, truth: &[f64]) -> Self {
        self.truth = Some(truth.to_vec());
        self
    }

    pub fn recording_iterates(mut self) -> Self {
        self.record_iterates = true;
        self
    }

    pub(crate) fn validate(&self, phi: &Matrix, f: &[f64]) -> Result<()> {
        crate::error::check_len("pursuit observation", phi.rows(), f.len())?;
        if self.k == 0 || self.k > phi.rows() {
            return Err(Error::InvalidArgument(format!(
                "sparsity k = {} must satisfy 1 <= k <= M = {}",
                self.k,
                phi.rows()
            )));
        }
        if self.k > phi.cols() {
            return Err(Error::InvalidArgument(format!(
                "sparsity k = {} exceeds N = {}",
                self.k,
                phi.cols()
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidArgument("tolerance must be positive".into()));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidArgument("max_iterations must be at least 1".into()));
        }
        if !(self.tau >= 0.0) {
            return Err(Error::InvalidArgument(format!("tau must be >= 0, got {}", self.tau)));
        }
        if let Some(t) = &self.truth {
            crate::error::check_len("pursuit ground truth", phi.cols(), t.len())?;
        }
        Ok(())
    }
}

/// Per-iteration record of a pursuit run.
///
/// `truth_distances[0]` is the distance of the zero starting point; entry
/// `i + 1` belongs to iterate `i + 1`. All other columns have one entry per
/// iteration.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct IterateTrace {
    pub supports: Vec<IndexSet>,
    /// `|Â_i|`, the size of the extended support explored.
    pub extended_sizes: Vec<usize>,
    /// `‖f − Φα_{i+1}‖₂`
    pub residual_norms: Vec<f64>,
    /// `‖f − Φγ_i‖₂` for the thresholded point before de-biasing.
    pub selection_residuals: Vec<f64>,
    /// `‖α_{i+1} − α_i‖₂`
    pub step_norms: Vec<f64>,
    pub truth_distances: Vec<f64>,
    pub iterates: Vec<Vec<f64>>,
}

impl IterateTrace {
    fn start(cfg: &PursuitConfig, n: usize) -> Self {
        let mut trace = Self::default();
        if let Some(t) = &cfg.truth {
            trace.truth_distances.push(distance2(&vec![0.0; n], t));
        }
        trace
    }

    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        cfg: &PursuitConfig,
        alpha: &[f64],
        previous: &[f64],
        extended: usize,
        residual: f64,
        selection_residual: f64,
    ) {
        self.supports.push(IndexSet::support_of(alpha));
        self.extended_sizes.push(extended);
        self.residual_norms.push(residual);
        self.selection_residuals.push(selection_residual);
        self.step_norms.push(distance2(alpha, previous));
        if let Some(t) = &cfg.truth {
            self.truth_distances.push(distance2(alpha, t));
        }
        if cfg.record_iterates {
            self.iterates.push(alpha.to_vec());
        }
    }

    pub fn len(&self) -> usize {
        self.residual_norms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residual_norms.is_empty()
    }
}

/// Solver output plus its trace.
#[derive(Debug, Clone)]
pub struct PursuitOutcome {
    pub result: SolverResult,
    pub trace: IterateTrace,
}

pub(crate) fn relative_change_small(next: &[f64], prev: &[f64], tolerance: f64) -> bool {
    distance2(next, prev) <= tolerance * norm2(next).max(1e-12)
}

pub(crate) fn residual_norm(phi: &Matrix, alpha: &[f64], f: &[f64]) -> f64 {
    norm2(&crate::numerics::residual(phi, alpha, f))
}
