use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::plan::{ExperimentId, ExperimentPlan, NoiseMode, SolverKind};
use super::tools::{solve_problem, SolveParams};
use crate::error::{Error, Result};
use crate::numerics::{distance2, norm2};
use crate::synth::{generate, parse_value, trial_seed, NoiseModel, ProblemSpec};

/// One solver run on one trial at one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub experiment: ExperimentId,
    pub trial: usize,
    pub seed: u64,
    pub solver: SolverKind,
    pub k: usize,
    /// Noise level (σ or the fixed noise norm, per the plan's noise mode).
    pub sigma: f64,
    /// τ as a multiple of `‖α*‖₁`; infinite for solvers that ignore τ.
    pub tau_scale: f64,
    pub tau: f64,
    /// `‖α* − α̂‖₂ / ‖α*‖₂`
    pub rel_error: f64,
    /// `‖α* − α̂‖₂`
    pub abs_error: f64,
    /// Residual in the solver's own error norm.
    pub residual: f64,
    pub l0: usize,
    pub l1: f64,
    pub iterations: usize,
    /// Kept out of the main CSV so that file stays reproducible.
    pub wall_time: Duration,
}

pub const CSV_HEADER: &str =
    "experiment,trial,seed,solver,k,sigma,tau_scale,tau,rel_error,abs_error,residual,l0,l1,iterations";

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

impl TrialRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.experiment,
            self.trial,
            self.seed,
            self.solver,
            self.k,
            num(self.sigma),
            num(self.tau_scale),
            num(self.tau),
            num(self.rel_error),
            num(self.abs_error),
            num(self.residual),
            self.l0,
            num(self.l1),
            self.iterations
        )
    }

    pub fn parse_csv_row(line: &str) -> Result<Self> {
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 14 {
            return Err(Error::InvalidArgument(format!("record has {} columns, expected 14", cols.len())));
        }
        Ok(Self {
            experiment: cols[0].parse()?,
            trial: parse_value("trial", cols[1])?,
            seed: parse_value("seed", cols[2])?,
            solver: cols[3].parse()?,
            k: parse_value("k", cols[4])?,
            sigma: parse_value("sigma", cols[5])?,
            tau_scale: parse_value("tau_scale", cols[6])?,
            tau: parse_value("tau", cols[7])?,
            rel_error: parse_value("rel_error", cols[8])?,
            abs_error: parse_value("abs_error", cols[9])?,
            residual: parse_value("residual", cols[10])?,
            l0: parse_value("l0", cols[11])?,
            l1: parse_value("l1", cols[12])?,
            iterations: parse_value("iterations", cols[13])?,
            wall_time: Duration::ZERO,
        })
    }
}

fn run_trial(plan: &ExperimentPlan, trial: usize) -> Result<Vec<TrialRecord>> {
    let seed = trial_seed(plan.seed, trial as u64);
    let mut records = Vec::new();
    for scenario in &plan.scenarios {
        let noise = match plan.noise_mode {
            NoiseMode::Gaussian => NoiseModel::Gaussian { sigma: scenario.noise },
            NoiseMode::FixedNorm => NoiseModel::FixedNorm { norm: scenario.noise },
        };
        let spec = ProblemSpec {
            n: plan.n,
            m: plan.m,
            k: scenario.k,
            noise,
            seed,
            scaling: plan.scaling,
        };
        let problem = generate(&spec)?;
        let truth_norm = norm2(&problem.alpha_star);
        for (grid_index, &scale) in plan.tau_grid.iter().enumerate() {
            for &solver in &plan.solvers {
                if !solver.uses_tau() && grid_index > 0 {
                    continue;
                }
                let (tau_scale, tau) = if solver.uses_tau() {
                    (scale, scale * problem.tau_star)
                } else {
                    (f64::INFINITY, f64::INFINITY)
                };
                let params = SolveParams {
                    k: Some(scenario.k),
                    tau: Some(tau),
                    rounds: None,
                };
                let start = Instant::now();
                let report = solve_problem(&problem.phi, &problem.f, solver, &params)?;
                let wall_time = start.elapsed();
                let abs_error = distance2(&report.result.alpha, &problem.alpha_star);
                records.push(TrialRecord {
                    experiment: plan.experiment,
                    trial,
                    seed,
                    solver,
                    k: scenario.k,
                    sigma: scenario.noise,
                    tau_scale,
                    tau,
                    rel_error: abs_error / truth_norm,
                    abs_error,
                    residual: report.result.residual,
                    l0: report.l0,
                    l1: report.l1,
                    iterations: report.result.iterations,
                    wall_time,
                });
            }
        }
    }
    Ok(records)
}

/// Runs every trial of the plan on `plan.workers` threads.
///
/// Records come back ordered by trial, then scenario, then τ, then solver,
/// whatever the thread count. Solvers that ignore τ run once per scenario.
pub fn run_experiment(plan: &ExperimentPlan) -> Result<Vec<TrialRecord>> {
    plan.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(plan.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;
    let per_trial: Vec<Result<Vec<TrialRecord>>> =
        pool.install(|| (0..plan.trials).into_par_iter().map(|t| run_trial(plan, t)).collect());
    let mut records = Vec::new();
    for trial in per_trial {
        records.extend(trial?);
    }
    Ok(records)
}

/// Medians over trials for one `(solver, k, σ, τ multiple)` grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub experiment: ExperimentId,
    pub solver: SolverKind,
    pub k: usize,
    pub sigma: f64,
    pub tau_scale: f64,
    pub trials: usize,
    pub median_rel_error: f64,
    pub median_abs_error: f64,
    pub median_residual: f64,
    pub median_iterations: f64,
}

pub const SUMMARY_HEADER: &str =
    "experiment,solver,k,sigma,tau_scale,trials,median_rel_error,median_abs_error,median_residual,median_iterations";

impl SummaryRow {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.experiment,
            self.solver,
            self.k,
            num(self.sigma),
            num(self.tau_scale),
            self.trials,
            num(self.median_rel_error),
            num(self.median_abs_error),
            num(self.median_residual),
            num(self.median_iterations)
        )
    }
}

/// Median with the mean of the two middle values for even counts.
pub fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        0.5 * (v[mid - 1] + v[mid])
    }
}

/// Groups records by grid point in first-seen order and takes medians.
pub fn summarize(records: &[TrialRecord]) -> Vec<SummaryRow> {
    type Key = (ExperimentId, SolverKind, usize, u64, u64);
    let key = |r: &TrialRecord| -> Key { (r.experiment, r.solver, r.k, r.sigma.to_bits(), r.tau_scale.to_bits()) };
    let mut keys: Vec<Key> = Vec::new();
    for r in records {
        let k = key(r);
        if !keys.contains(&k) {
            keys.push(k);
        }
    }
    keys.into_iter()
        .map(|k| {
            let group: Vec<&TrialRecord> = records.iter().filter(|r| key(r) == k).collect();
            let col = |f: fn(&TrialRecord) -> f64| median(&group.iter().map(|r| f(r)).collect::<Vec<_>>());
            SummaryRow {
                experiment: k.0,
                solver: k.1,
                k: k.2,
                sigma: f64::from_bits(k.3),
                tau_scale: f64::from_bits(k.4),
                trials: group.len(),
                median_rel_error: col(|r| r.rel_error),
                median_abs_error: col(|r| r.abs_error),
                median_residual: col(|r| r.residual),
                median_iterations: col(|r| r.iterations as f64),
            }
        })
        .collect()
}

/// `path` with `suffix` appended to the file name.
pub fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

pub fn records_csv(records: &[TrialRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// Writes `out` (records), `out.summary.csv` (medians), `out.meta` (plan,
/// RNG and version) and `out.timing.csv` (wall times).
pub fn write_outputs(plan: &ExperimentPlan, records: &[TrialRecord], out: &Path) -> Result<()> {
    std::fs::write(out, records_csv(records))?;
    std::fs::write(sidecar(out, ".summary.csv"), summary_csv(&summarize(records)))?;

    let mut meta = String::new();
    let _ = writeln!(meta, "crate={} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION"));
    let _ = writeln!(meta, "csv_format=1");
    let _ = writeln!(meta, "rng=chacha20 stream=trial*16+purpose gaussian=box-muller");
    let _ = writeln!(meta, "records={}", records.len());
    meta.push_str(&plan.to_kv());
    std::fs::write(sidecar(out, ".meta"), meta)?;

    let mut timing = String::from("trial,solver,k,sigma,tau_scale,wall_seconds\n");
    for r in records {
        let _ = writeln!(
            timing,
            "{},{},{},{},{},{:.6}",
            r.trial,
            r.solver,
            r.k,
            num(r.sigma),
            num(r.tau_scale),
            r.wall_time.as_secs_f64()
        );
    }
    std::fs::write(sidecar(out, ".timing.csv"), timing)?;
    Ok(())
}

pub fn read_records(path: impl AsRef<Path>) -> Result<Vec<TrialRecord>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            detail: "missing or unexpected header".into(),
        });
    }
    lines
        .filter(|l| !l.is_empty())
        .map(|l| {
            TrialRecord::parse_csv_row(l).map_err(|e| Error::Parse {
                path: path.to_path_buf(),
                detail: e.to_string(),
            })
        })
        .collect()
}

/// Runs the plan and writes its outputs to `plan.out`.
pub fn run_and_write(plan: &ExperimentPlan) -> Result<Vec<TrialRecord>> {
    let out = plan
        .out
        .clone()
        .ok_or_else(|| Error::InvalidArgument("plan has no output path".into()))?;
    let records = run_experiment(plan)?;
    write_outputs(plan, &records, &out)?;
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::plan::Scenario;

    fn tiny_plan() -> ExperimentPlan {
        let mut plan = ExperimentPlan::defaults(ExperimentId::Custom);
        plan.n = 60;
        plan.m = 30;
        plan.scenarios = vec![Scenario { k: 3, noise: 0.0 }, Scenario { k: 3, noise: 0.01 }];
        plan.tau_grid = vec![0.5, 1.0];
        plan.trials = 3;
        plan.solvers = SolverKind::ALL.to_vec();
        plan
    }

    #[test]
    fn record_layout_and_order() {
        let records = run_experiment(&tiny_plan()).unwrap();
        // per trial and scenario: 4 tau-aware solvers x 2 taus + 2 others
        assert_eq!(records.len(), 3 * 2 * (4 * 2 + 2));
        assert!(records.windows(2).all(|w| w[0].trial <= w[1].trial));
        for r in &records {
            assert_eq!(r.solver.uses_tau(), r.tau.is_finite());
            assert!(r.rel_error >= 0.0 && r.abs_error >= 0.0);
        }
    }

    #[test]
    fn rows_round_trip() {
        for r in run_experiment(&tiny_plan()).unwrap() {
            let back = TrialRecord::parse_csv_row(&r.csv_row()).unwrap();
            assert_eq!(back, TrialRecord { wall_time: Duration::ZERO, ..r });
        }
    }

    #[test]
    fn medians() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
        assert!(median(&[]).is_nan());
    }

    #[test]
    fn sidecar_names() {
        assert_eq!(sidecar(Path::new("/a/b.csv"), ".meta"), PathBuf::from("/a/b.csv.meta"));
    }
}
