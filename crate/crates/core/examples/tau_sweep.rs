//! Small Monte Carlo sweep of the ℓ1 budget for CLASH against SP.

use normsparse::bench::{run_experiment, summarize, ExperimentId, ExperimentPlan};

fn main() -> normsparse::Result<()> {
    let mut plan = ExperimentPlan::defaults(ExperimentId::TauSweep);
    plan.trials = 10;
    plan.workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let records = run_experiment(&plan)?;
    println!("{:>8}  {:>4}  {:>6}  {:>10}  {:>14}", "solver", "k", "noise", "tau/tau*", "median rel_err");
    for row in summarize(&records) {
        println!(
            "{:>8}  {:>4}  {:>6}  {:>10}  {:>14.4e}",
            row.solver.to_string(),
            row.k,
            row.sigma,
            row.tau_scale,
            row.median_rel_error
        );
    }
    Ok(())
}
