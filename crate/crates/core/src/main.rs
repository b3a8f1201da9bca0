use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use normsparse::bench::{
    parse_list, parse_solvers, rip_report, run_and_write, solve_file, summarize, summary_csv, ExperimentId,
    ExperimentPlan, SolveParams, SolverKind,
};
use normsparse::synth::MatrixScaling;
use normsparse::Result;

#[derive(Parser)]
#[command(name = "normsparse", version, about = "Sparse recovery under sparsity and l1-norm budgets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recover a sparse vector from a matrix file and an observation file.
    Solve(SolveArgs),
    /// Run a Monte Carlo experiment and write CSV results.
    Bench(BenchArgs),
    /// Probe restricted isometry constants of a matrix file.
    Rip(RipArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Matrix file (binary or CSV).
    #[arg(long)]
    matrix: PathBuf,
    /// Observation vector file.
    #[arg(long)]
    observation: PathBuf,
    /// One of game-l2, game-linf, lasso-pg, sp, clash, iht.
    #[arg(long)]
    solver: String,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    tau: Option<f64>,
    /// Game rounds (default 4k).
    #[arg(long)]
    rounds: Option<usize>,
    /// Where to write the recovered vector (binary format).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Plan file with key=value lines; flags override it.
    #[arg(long)]
    plan: Option<PathBuf>,
    /// dantzig-noise, noise-resilience, tau-sweep or custom.
    #[arg(long)]
    experiment: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated solver names.
    #[arg(long)]
    solver: Option<String>,
    /// Comma-separated noise levels.
    #[arg(long)]
    sigma_grid: Option<String>,
    /// Comma-separated multiples of the true signal's l1 norm.
    #[arg(long)]
    tau_grid: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Comma-separated sparsity levels.
    #[arg(long)]
    k: Option<String>,
    /// unit or inv-sqrt-m.
    #[arg(long)]
    matrix_scaling: Option<String>,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct RipArgs {
    #[arg(long)]
    matrix: PathBuf,
    /// Comma-separated sparsity levels.
    #[arg(long)]
    s: String,
    /// Norm exponent; `inf` for the max norm.
    #[arg(long, default_value = "2")]
    q: f64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn solve(args: SolveArgs) -> Result<()> {
    let solver: SolverKind = args.solver.parse()?;
    let params = SolveParams {
        k: args.k,
        tau: args.tau,
        rounds: args.rounds,
    };
    let report = solve_file(&args.matrix, &args.observation, solver, &params, &args.out)?;
    println!("{report}");
    Ok(())
}

fn bench(args: BenchArgs) -> Result<()> {
    let mut plan = match &args.plan {
        Some(path) => ExperimentPlan::from_kv(&std::fs::read_to_string(path)?)?,
        None => {
            let id: ExperimentId = args.experiment.as_deref().unwrap_or("custom").parse()?;
            let mut plan = ExperimentPlan::defaults(id);
            plan.workers = std::thread::available_parallelism().map_or(1, |n| n.get());
            plan
        }
    };
    if let (Some(_), Some(id)) = (&args.plan, &args.experiment) {
        let id: ExperimentId = id.parse()?;
        if id != plan.experiment {
            return Err(normsparse::Error::InvalidArgument(format!(
                "--experiment {id} conflicts with the plan file's {}",
                plan.experiment
            )));
        }
    }
    if let Some(v) = args.seed {
        plan.seed = v;
    }
    if let Some(v) = args.trials {
        plan.trials = v;
    }
    if let Some(v) = args.out {
        plan.out = Some(v);
    }
    if let Some(v) = &args.solver {
        plan.solvers = parse_solvers(v)?;
    }
    if let Some(v) = &args.tau_grid {
        plan.tau_grid = parse_list("tau-grid", v)?;
    }
    if let Some(v) = args.n {
        plan.n = v;
    }
    if let Some(v) = args.m {
        plan.m = v;
    }
    if let Some(v) = &args.matrix_scaling {
        plan.scaling = v.parse::<MatrixScaling>()?;
    }
    if let Some(v) = args.workers {
        plan.workers = v;
    }
    if args.k.is_some() || args.sigma_grid.is_some() {
        let ks = match &args.k {
            Some(v) => parse_list("k", v)?,
            None => plan.ks(),
        };
        let levels = match &args.sigma_grid {
            Some(v) => parse_list("sigma-grid", v)?,
            None => plan.noise_levels(),
        };
        plan.set_grid(&ks, &levels);
    }
    if plan.out.is_none() {
        plan.out = Some(PathBuf::from(format!("{}.csv", plan.experiment)));
    }
    let records = run_and_write(&plan)?;
    print!("{}", summary_csv(&summarize(&records)));
    eprintln!(
        "wrote {} records to {}",
        records.len(),
        plan.out.as_ref().map(|p| p.display().to_string()).unwrap_or_default()
    );
    Ok(())
}

fn rip(args: RipArgs) -> Result<()> {
    let sparsities: Vec<usize> = parse_list("s", &args.s)?;
    let report = rip_report(&args.matrix, &sparsities, args.q, args.trials, args.seed)?;
    print!("{report}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Bench(a) => bench(a),
        Command::Rip(a) => rip(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
