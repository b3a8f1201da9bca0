use std::fmt;

/// Why a solver stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Relative iterate change (or projected-gradient norm) fell below tolerance.
    Converged,
    MaxIterations,
    /// Subspace Pursuit's classical stop: the residual grew, so the previous
    /// iterate was kept.
    ResidualIncreased,
    /// A fixed round budget was used up (GAME).
    RoundsCompleted,
    /// The data made every candidate equivalent (for example `f = 0`).
    TrivialInput,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Termination::Converged => "converged",
            Termination::MaxIterations => "max-iterations",
            Termination::ResidualIncreased => "residual-increased",
            Termination::RoundsCompleted => "rounds-completed",
            Termination::TrivialInput => "trivial-input",
        };
        f.write_str(s)
    }
}

/// Output shared by every solver.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverResult {
    pub alpha: Vec<f64>,
    /// `‖Φα̂ − f‖₂`
    pub residual_l2: f64,
    /// Residual in the solver's own error norm (`ℓ2` or `ℓ∞` of the
    /// transformed system for the Dantzig form).
    pub residual: f64,
    pub iterations: usize,
    pub termination: Termination,
    /// One entry per iteration: the residual norm the solver tracks.
    pub history: Vec<f64>,
}
