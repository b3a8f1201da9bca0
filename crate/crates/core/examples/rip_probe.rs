//! Empirical lower bounds on the restricted isometry constant of a Gaussian matrix.

use normsparse::bench::rip_table;
use normsparse::synth::{generate, ProblemSpec};

fn main() -> normsparse::Result<()> {
    let p = generate(&ProblemSpec::new(1000, 200, 1, 5))?;
    let report = rip_table(&p.phi, &[5, 10, 20, 40, 80], 2.0, 1000, 0)?;
    print!("{report}");
    Ok(())
}
