//! Export a synthetic problem, then solve it from disk.

use normsparse::bench::{solve_file, SolveParams, SolverKind};
use normsparse::numerics::{distance2, read_vector};
use normsparse::synth::{generate, ProblemSpec};

fn main() -> normsparse::Result<()> {
    let dir = std::env::temp_dir().join("normsparse-round-trip");
    let p = generate(&ProblemSpec::new(300, 100, 8, 21).with_sigma(1e-3))?;
    p.export(&dir)?;
    println!("wrote {}", dir.display());

    let params = SolveParams {
        k: Some(8),
        tau: Some(p.tau_star),
        rounds: None,
    };
    let out = dir.join("alpha_hat.bin");
    let report = solve_file(dir.join("phi.bin"), dir.join("f.bin"), SolverKind::Clash, &params, &out)?;
    println!("{report}");
    let alpha_star = read_vector(dir.join("alpha_star.bin"))?;
    println!("||alpha_hat - alpha*||_2 = {:.3e}", distance2(&read_vector(&out)?, &alpha_star));
    Ok(())
}
