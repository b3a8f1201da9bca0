//! Hard thresholding, the ℓ1-ball projection and their composition.

use normsparse::numerics::{l0, norm1};
use normsparse::projections::{hard_threshold, l1_project, project_k_tau, ConstraintSet};

fn main() -> normsparse::Result<()> {
    let w = [3.0, -0.5, 1.2, 0.0, -2.4, 0.7];
    let set = ConstraintSet::new(3, 4.0)?;

    let kept = hard_threshold(&w, set.k);
    let ball = l1_project(&w, set.tau)?;
    let joint = project_k_tau(&w, &set);

    println!("w          {w:?}");
    println!("top-3      {kept:?}");
    println!("l1 ball    {ball:?}  (l1 = {:.3})", norm1(&ball));
    println!("joint      {joint:?}  (l0 = {}, l1 = {:.3})", l0(&joint), norm1(&joint));
    assert!(set.contains(&joint, 1e-12));
    Ok(())
}
