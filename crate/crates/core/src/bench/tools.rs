use std::fmt;
use std::path::Path;

use super::plan::SolverKind;
use crate::error::{Error, Result};
use crate::game::{game_solve, game_solve_dantzig, ErrorNorm, GameConfig};
use crate::numerics::{l0, norm1, read_matrix, read_vector, write_vector, Matrix};
use crate::pursuit::{clash_solve, iht_solve, lasso_pg_solve, sp_solve, IhtSettings, PursuitConfig};
use crate::result::SolverResult;
use crate::synth::rip_probe;

/// δ₃ₖ level under which the pursuit iterations contract.
pub const CONTRACTION_THRESHOLD: f64 = 0.3658;
/// δ₃ₖ level under which Subspace Pursuit recovers exactly.
pub const EXACT_RECOVERY_THRESHOLD: f64 = 0.38427;

/// Lasso stopping rule used by the harness and the `solve` command.
pub const LASSO_TOL: f64 = 1e-8;
pub const LASSO_MAX_ITER: usize = 2000;

/// Solver parameters; which ones are required depends on the solver.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SolveParams {
    /// Sparsity (SP, CLASH, IHT; also sets the default game length `4k`).
    pub k: Option<usize>,
    /// ℓ1 budget (CLASH, Lasso, game solvers).
    pub tau: Option<f64>,
    /// Game rounds `T`.
    pub rounds: Option<usize>,
}

impl SolveParams {
    fn k(&self, solver: SolverKind) -> Result<usize> {
        self.k
            .ok_or_else(|| Error::InvalidArgument(format!("solver {solver} needs a sparsity k")))
    }

    fn tau(&self, solver: SolverKind) -> Result<f64> {
        self.tau
            .ok_or_else(|| Error::InvalidArgument(format!("solver {solver} needs an l1 budget tau")))
    }

    fn rounds(&self, solver: SolverKind) -> Result<usize> {
        self.rounds
            .or(self.k.map(|k| 4 * k))
            .ok_or_else(|| Error::InvalidArgument(format!("solver {solver} needs rounds or k")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub solver: SolverKind,
    pub result: SolverResult,
    pub l0: usize,
    pub l1: f64,
}

impl fmt::Display for SolveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "solver       {}", self.solver)?;
        writeln!(f, "termination  {}", self.result.termination)?;
        writeln!(f, "iterations   {}", self.result.iterations)?;
        writeln!(f, "residual     {:.6e}", self.result.residual)?;
        writeln!(f, "residual_l2  {:.6e}", self.result.residual_l2)?;
        writeln!(f, "l0           {}", self.l0)?;
        write!(f, "l1           {:.6e}", self.l1)
    }
}

/// Runs one solver with harness defaults.
pub fn solve_problem(phi: &Matrix, f: &[f64], solver: SolverKind, params: &SolveParams) -> Result<SolveReport> {
    let result = match solver {
        SolverKind::GameL2 => {
            let cfg = GameConfig::new(params.rounds(solver)?, ErrorNorm::L2, params.tau(solver)?);
            game_solve(phi, f, &cfg)?.result
        }
        SolverKind::GameLinf => {
            let cfg = GameConfig::new(params.rounds(solver)?, ErrorNorm::LInf, params.tau(solver)?);
            game_solve_dantzig(phi, f, &cfg)?.result
        }
        SolverKind::LassoPg => lasso_pg_solve(phi, f, params.tau(solver)?, LASSO_TOL, LASSO_MAX_ITER)?,
        SolverKind::Sp => sp_solve(phi, f, &PursuitConfig::new(params.k(solver)?, f64::INFINITY))?.result,
        SolverKind::Clash => clash_solve(phi, f, &PursuitConfig::new(params.k(solver)?, params.tau(solver)?))?.result,
        SolverKind::Iht => iht_solve(phi, f, &IhtSettings::new(params.k(solver)?))?,
    };
    Ok(SolveReport {
        solver,
        l0: l0(&result.alpha),
        l1: norm1(&result.alpha),
        result,
    })
}

/// Reads `Φ` and `f`, runs the solver and writes `α̂` to `out` in the
/// binary vector format.
pub fn solve_file(
    matrix: impl AsRef<Path>,
    observation: impl AsRef<Path>,
    solver: SolverKind,
    params: &SolveParams,
    out: impl AsRef<Path>,
) -> Result<SolveReport> {
    let phi = read_matrix(matrix)?;
    let f = read_vector(observation)?;
    let report = solve_problem(&phi, &f, solver, params)?;
    write_vector(out, &report.result.alpha)?;
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RipRow {
    pub s: usize,
    /// Largest deviation among the probes drawn at sparsity `s`.
    pub sampled: f64,
    /// Largest deviation among the probes at every requested sparsity
    /// `≤ s`; an `s'`-sparse vector is also `s`-sparse, so this is still a
    /// lower bound on the order-`s` constant.
    pub lower_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RipReport {
    pub q: f64,
    pub trials: usize,
    pub seed: u64,
    /// In the order requested.
    pub rows: Vec<RipRow>,
}

impl fmt::Display for RipReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# RIP-q probe: q = {}, trials = {}, seed = {}", self.q, self.trials, self.seed)?;
        writeln!(
            f,
            "# eps_hat is an empirical lower bound only; values below a threshold certify nothing"
        )?;
        writeln!(
            f,
            "{:>6}  {:>12}  {:>12}  {:>14}  {:>14}",
            "s", "sampled", "eps_hat", ">= 0.3658", ">= 0.38427"
        )?;
        for row in &self.rows {
            let eps = row.lower_bound;
            let flag = |t: f64| if eps >= t { "exceeded" } else { "not-observed" };
            writeln!(
                f,
                "{:>6}  {:>12.6e}  {eps:>12.6e}  {:>14}  {:>14}",
                row.s,
                row.sampled,
                flag(CONTRACTION_THRESHOLD),
                flag(EXACT_RECOVERY_THRESHOLD)
            )?;
        }
        Ok(())
    }
}

/// Probes `Φ` at each sparsity in `sparsities`. The reported bound is
/// non-decreasing in `s`.
pub fn rip_table(phi: &Matrix, sparsities: &[usize], q: f64, trials: usize, seed: u64) -> Result<RipReport> {
    let sampled = sparsities
        .iter()
        .map(|&s| rip_probe(phi, s, q, trials, seed))
        .collect::<Result<Vec<_>>>()?;
    let rows = sparsities
        .iter()
        .zip(&sampled)
        .map(|(&s, &own)| RipRow {
            s,
            sampled: own,
            lower_bound: sparsities
                .iter()
                .zip(&sampled)
                .filter(|(&other, _)| other <= s)
                .fold(own, |acc, (_, &e)| acc.max(e)),
        })
        .collect();
    Ok(RipReport { q, trials, seed, rows })
}

pub fn rip_report(matrix: impl AsRef<Path>, sparsities: &[usize], q: f64, trials: usize, seed: u64) -> Result<RipReport> {
    rip_table(&read_matrix(matrix)?, sparsities, q, trials, seed)
}
