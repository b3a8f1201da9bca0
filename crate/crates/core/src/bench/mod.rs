//! Monte Carlo harness over seeded synthetic problems.
//!
//! A [`ExperimentPlan`] names a grid of `(k, noise level)` scenarios, a grid of
//! τ multiples of `‖α*‖₁` and a solver list. [`run_experiment`] draws one
//! problem per trial and scenario and records every solver's error;
//! [`write_outputs`] emits the record CSV, a median summary, a `.meta` file
//! and wall times. The record CSV depends only on the plan and master seed.

mod plan;
mod run;
mod tools;

pub use plan::{log_grid, parse_list, parse_solvers, ExperimentId, ExperimentPlan, NoiseMode, Scenario, SolverKind};
pub use run::{
    median, read_records, records_csv, run_and_write, run_experiment, sidecar, summarize, summary_csv, write_outputs,
    SummaryRow, TrialRecord, CSV_HEADER, SUMMARY_HEADER,
};
pub use tools::{
    rip_report, rip_table, solve_file, solve_problem, RipReport, RipRow, SolveParams, SolveReport, CONTRACTION_THRESHOLD,
    EXACT_RECOVERY_THRESHOLD, LASSO_MAX_ITER, LASSO_TOL,
};
