//! Exact recovery with CLASH and Subspace Pursuit on a noiseless problem.

use normsparse::numerics::{distance2, norm2};
use normsparse::pursuit::{clash_solve, contraction_check, sp_solve, PursuitConfig};
use normsparse::synth::{generate, ProblemSpec};

fn main() -> normsparse::Result<()> {
    let p = generate(&ProblemSpec::new(500, 160, 30, 11))?;
    let rel = |a: &[f64]| distance2(a, &p.alpha_star) / norm2(&p.alpha_star);

    let clash = clash_solve(&p.phi, &p.f, &PursuitConfig::new(30, p.tau_star).with_truth(&p.alpha_star))?;
    let sp = sp_solve(&p.phi, &p.f, &PursuitConfig::new(30, f64::INFINITY))?;
    println!("clash: {} iterations, rel_err {:.3e}", clash.result.iterations, rel(&clash.result.alpha));
    println!("sp:    {} iterations, rel_err {:.3e}", sp.result.iterations, rel(&sp.result.alpha));

    println!("distance to the truth per iteration:");
    for (i, d) in clash.trace.truth_distances.iter().enumerate() {
        println!("  {i:>3}  {d:.3e}");
    }
    let report = contraction_check(&clash.trace, 0.7, 0.0, 0.0)?;
    println!("0.7 contraction envelope holds: {} ({} steps checked)", report.holds(), report.checked);
    Ok(())
}
