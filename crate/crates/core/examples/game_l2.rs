//! Sparse approximation in ℓ2 by the primal-dual game, with its certificate.

use normsparse::game::{game_solve, ErrorNorm, GameConfig};
use normsparse::numerics::{distance2, l0, norm2};
use normsparse::synth::{generate, ProblemSpec};

fn main() -> normsparse::Result<()> {
    let p = generate(&ProblemSpec::new(200, 50, 5, 7).with_sigma(0.01))?;
    println!("{:>6}  {:>6}  {:>12}  {:>12}  {:>10}", "T", "l0", "residual", "bound", "rel_err");
    for rounds in [25, 100, 400] {
        let out = game_solve(&p.phi, &p.f, &GameConfig::new(rounds, ErrorNorm::L2, p.tau_star))?;
        let c = &out.certificate;
        println!(
            "{rounds:>6}  {:>6}  {:>12.4e}  {:>12.4e}  {:>10.4}",
            l0(&out.result.alpha),
            c.achieved_residual,
            c.regret_bound,
            distance2(&out.result.alpha, &p.alpha_star) / norm2(&p.alpha_star)
        );
    }
    Ok(())
}
