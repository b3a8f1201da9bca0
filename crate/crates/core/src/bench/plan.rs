use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::synth::{parse_kv, parse_value, MatrixScaling};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentId {
    /// GAME on the Dantzig form against Lasso and SP over a noise grid.
    DantzigNoise,
    /// CLASH against SP and Lasso over a noise grid at high sparsity.
    NoiseResilience,
    /// CLASH error as the ℓ1 budget moves around `‖α*‖₁`.
    TauSweep,
    Custom,
}

impl ExperimentId {
    pub const ALL: [ExperimentId; 4] = [
        ExperimentId::DantzigNoise,
        ExperimentId::NoiseResilience,
        ExperimentId::TauSweep,
        ExperimentId::Custom,
    ];
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExperimentId::DantzigNoise => "dantzig-noise",
            ExperimentId::NoiseResilience => "noise-resilience",
            ExperimentId::TauSweep => "tau-sweep",
            ExperimentId::Custom => "custom",
        })
    }
}

impl FromStr for ExperimentId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.to_string() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown experiment `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SolverKind {
    /// Game solver with ℓ2 error, `T = 4k` rounds.
    GameL2,
    /// Game solver on the Dantzig form (ℓ∞ error of `ΦᵀΦα − Φᵀf`), `T = 4k`.
    GameLinf,
    LassoPg,
    Sp,
    Clash,
    Iht,
}

impl SolverKind {
    pub const ALL: [SolverKind; 6] = [
        SolverKind::GameL2,
        SolverKind::GameLinf,
        SolverKind::LassoPg,
        SolverKind::Sp,
        SolverKind::Clash,
        SolverKind::Iht,
    ];

    /// Whether the solver reads the ℓ1 budget.
    pub fn uses_tau(self) -> bool {
        !matches!(self, SolverKind::Sp | SolverKind::Iht)
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverKind::GameL2 => "game-l2",
            SolverKind::GameLinf => "game-linf",
            SolverKind::LassoPg => "lasso-pg",
            SolverKind::Sp => "sp",
            SolverKind::Clash => "clash",
            SolverKind::Iht => "iht",
        })
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.to_string() == s)
            .ok_or_else(|| Error::UnknownSolver(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseMode {
    /// The level is the per-entry standard deviation σ.
    Gaussian,
    /// The level is the exact ℓ2 norm of the noise vector.
    FixedNorm,
}

impl fmt::Display for NoiseMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NoiseMode::Gaussian => "gaussian",
            NoiseMode::FixedNorm => "fixed-norm",
        })
    }
}

impl FromStr for NoiseMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(NoiseMode::Gaussian),
            "fixed-norm" => Ok(NoiseMode::FixedNorm),
            other => Err(Error::InvalidArgument(format!("unknown noise mode `{other}`"))),
        }
    }
}

/// One `(k, noise level)` pair of the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub k: usize,
    pub noise: f64,
}

/// A Monte Carlo experiment: every trial draws one problem per scenario and
/// runs every solver at every τ in the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub experiment: ExperimentId,
    pub n: usize,
    pub m: usize,
    pub scenarios: Vec<Scenario>,
    pub noise_mode: NoiseMode,
    /// Multiples of `‖α*‖₁`.
    pub tau_grid: Vec<f64>,
    pub trials: usize,
    pub solvers: Vec<SolverKind>,
    pub seed: u64,
    pub scaling: MatrixScaling,
    /// Thread count; the output does not depend on it.
    pub workers: usize,
    pub out: Option<PathBuf>,
}

/// `count` points from `10^lo` to `10^hi`, evenly spaced in the exponent.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![10f64.powf(lo)];
    }
    (0..count)
        .map(|i| 10f64.powf(lo + (hi - lo) * i as f64 / (count - 1) as f64))
        .collect()
}

fn product(ks: &[usize], levels: &[f64]) -> Vec<Scenario> {
    ks.iter()
        .flat_map(|&k| levels.iter().map(move |&noise| Scenario { k, noise }))
        .collect()
}

impl ExperimentPlan {
    /// Desk-scale defaults for an experiment.
    pub fn defaults(experiment: ExperimentId) -> Self {
        use SolverKind::*;
        let base = Self {
            experiment,
            n: 200,
            m: 50,
            scenarios: vec![Scenario { k: 5, noise: 0.0 }],
            noise_mode: NoiseMode::Gaussian,
            tau_grid: vec![1.0],
            trials: 10,
            solvers: vec![Clash, Sp],
            seed: 0,
            scaling: MatrixScaling::InvSqrtM,
            workers: 1,
            out: None,
        };
        match experiment {
            ExperimentId::DantzigNoise => Self {
                n: 1000,
                m: 200,
                scenarios: product(&[20], &log_grid(-3.5, -0.5, 7)),
                trials: 50,
                solvers: vec![GameLinf, LassoPg, Sp],
                ..base
            },
            ExperimentId::NoiseResilience => Self {
                n: 1000,
                m: 305,
                scenarios: product(&[115], &log_grid(-5.0, -1.0, 5)),
                trials: 50,
                solvers: vec![Clash, LassoPg, Sp],
                ..base
            },
            ExperimentId::TauSweep => Self {
                n: 500,
                m: 160,
                scenarios: vec![Scenario { k: 57, noise: 0.05 }, Scenario { k: 62, noise: 0.0 }],
                noise_mode: NoiseMode::FixedNorm,
                tau_grid: vec![0.2, 0.5, 1.0, 2.0, 5.0],
                trials: 50,
                ..base
            },
            ExperimentId::Custom => base,
        }
    }

    /// Rebuilds the scenarios as the product of `ks` and `levels`.
    pub fn set_grid(&mut self, ks: &[usize], levels: &[f64]) {
        self.scenarios = product(ks, levels);
    }

    pub fn ks(&self) -> Vec<usize> {
        let mut ks: Vec<usize> = self.scenarios.iter().map(|s| s.k).collect();
        ks.dedup();
        ks
    }

    pub fn validate(&self) -> Result<()> {
        if self.scenarios.is_empty() || self.tau_grid.is_empty() || self.solvers.is_empty() {
            return Err(Error::InvalidArgument("plan grids and solver list must be nonempty".into()));
        }
        if self.trials == 0 || self.workers == 0 {
            return Err(Error::InvalidArgument("trials and workers must be at least 1".into()));
        }
        for s in &self.scenarios {
            if s.k == 0 || s.k > self.m || self.m > self.n {
                return Err(Error::InvalidArgument(format!(
                    "need 1 <= k <= M <= N, got k = {}, M = {}, N = {}",
                    s.k, self.m, self.n
                )));
            }
            if !(s.noise >= 0.0 && s.noise.is_finite()) {
                return Err(Error::InvalidArgument(format!("noise level must be >= 0, got {}", s.noise)));
            }
        }
        if let Some(t) = self.tau_grid.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
            return Err(Error::InvalidArgument(format!("tau multipliers must be finite and > 0, got {t}")));
        }
        Ok(())
    }

    /// Flat `key=value` text; [`ExperimentPlan::from_kv`] reads it back.
    pub fn to_kv(&self) -> String {
        let scenarios: Vec<String> = self.scenarios.iter().map(|s| format!("{}:{:?}", s.k, s.noise)).collect();
        let mut out = format!(
            "experiment={}\nn={}\nm={}\nscenarios={}\nnoise_mode={}\ntau_grid={}\ntrials={}\nsolvers={}\nseed={}\nscaling={}\nworkers={}\n",
            self.experiment,
            self.n,
            self.m,
            scenarios.join(";"),
            self.noise_mode,
            join(&self.tau_grid),
            self.trials,
            self.solvers.iter().map(ToString::to_string).collect::<Vec<_>>().join(","),
            self.seed,
            self.scaling,
            self.workers,
        );
        if let Some(out_path) = &self.out {
            out.push_str(&format!("out={}\n", out_path.display()));
        }
        out
    }

    /// Reads a plan file. Missing keys take the experiment's defaults;
    /// `k` and `sigma_grid` (a product grid) may replace `scenarios`.
    pub fn from_kv(text: &str) -> Result<Self> {
        let map = parse_kv(text)?;
        let experiment = match map.get("experiment") {
            Some(id) => id.parse()?,
            None => ExperimentId::Custom,
        };
        let mut plan = Self::defaults(experiment);
        for (key, value) in &map {
            match key.as_str() {
                "experiment" => {}
                "n" => plan.n = parse_value(key, value)?,
                "m" => plan.m = parse_value(key, value)?,
                "scenarios" => plan.scenarios = parse_scenarios(value)?,
                "k" | "sigma_grid" => {}
                "noise_mode" => plan.noise_mode = value.parse()?,
                "tau_grid" => plan.tau_grid = parse_list(key, value)?,
                "trials" => plan.trials = parse_value(key, value)?,
                "solvers" => plan.solvers = parse_solvers(value)?,
                "seed" => plan.seed = parse_value(key, value)?,
                "scaling" => plan.scaling = value.parse()?,
                "workers" => plan.workers = parse_value(key, value)?,
                "out" => plan.out = Some(PathBuf::from(value)),
                other => return Err(Error::InvalidArgument(format!("unknown plan key `{other}`"))),
            }
        }
        if map.contains_key("k") || map.contains_key("sigma_grid") {
            if map.contains_key("scenarios") {
                return Err(Error::InvalidArgument(
                    "give either `scenarios` or `k`/`sigma_grid`, not both".into(),
                ));
            }
            let ks = match map.get("k") {
                Some(v) => parse_list("k", v)?,
                None => plan.ks(),
            };
            let levels = match map.get("sigma_grid") {
                Some(v) => parse_list("sigma_grid", v)?,
                None => plan.noise_levels(),
            };
            plan.set_grid(&ks, &levels);
        }
        plan.validate()?;
        Ok(plan)
    }

    pub fn noise_levels(&self) -> Vec<f64> {
        let mut levels: Vec<f64> = Vec::new();
        for s in &self.scenarios {
            if !levels.contains(&s.noise) {
                levels.push(s.noise);
            }
        }
        levels
    }
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(",")
}

pub fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_value(key, s))
        .collect()
}

pub fn parse_solvers(value: &str) -> Result<Vec<SolverKind>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect()
}

fn parse_scenarios(value: &str) -> Result<Vec<Scenario>> {
    value
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let (k, noise) = item
                .split_once(':')
                .ok_or_else(|| Error::InvalidArgument(format!("scenario `{item}` is not k:level")))?;
            Ok(Scenario {
                k: parse_value("scenario k", k.trim())?,
                noise: parse_value("scenario noise", noise.trim())?,
            })
        })
        .collect()
}
