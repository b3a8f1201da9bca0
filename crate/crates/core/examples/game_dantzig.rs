//! Dantzig-selector style recovery: the game in ℓ∞ on `ΦᵀΦ α ≈ Φᵀf`.

use normsparse::game::{game_solve_dantzig, ErrorNorm, GameConfig};
use normsparse::numerics::{distance2, l0, norm2};
use normsparse::synth::{generate, ProblemSpec};

fn main() -> normsparse::Result<()> {
    for sigma in [1e-3, 1e-2, 1e-1] {
        let p = generate(&ProblemSpec::new(500, 120, 10, 3).with_sigma(sigma))?;
        let cfg = GameConfig::new(40, ErrorNorm::LInf, p.tau_star);
        let out = game_solve_dantzig(&p.phi, &p.f, &cfg)?;
        println!(
            "sigma {sigma:.0e}: ||Phi^T r||_inf = {:.4e} (bound {:.4e}), l0 = {}, rel_err = {:.4}",
            out.certificate.achieved_residual,
            out.certificate.regret_bound,
            l0(&out.result.alpha),
            distance2(&out.result.alpha, &p.alpha_star) / norm2(&p.alpha_star)
        );
    }
    Ok(())
}
