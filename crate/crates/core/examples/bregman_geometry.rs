//! Bregman distances, mirror maps and projections for each potential.

use normsparse::bregman::{
    bregman_distance, bregman_project, grad_map, grad_map_inverse, BregmanGeometry, DualBall, DualNorm, Potential,
};

fn main() -> normsparse::Result<()> {
    let p = [0.2, 0.3, 0.5];
    let q = [0.4, 0.4, 0.2];
    for potential in [Potential::SquaredEuclidean, Potential::Entropy, Potential::ItakuraSaito] {
        let g = BregmanGeometry::new(potential.clone(), 1.0)?;
        let d = bregman_distance(&g, &p, &q)?;
        let round_trip = grad_map_inverse(&g, &grad_map(&g, &p)?)?;
        println!("{potential:?}: B(p, q) = {d:.6}, mirror round trip {round_trip:?}");
    }

    // Euclidean projection onto the unit ℓ2 ball
    let g = BregmanGeometry::squared_euclidean();
    let outside = [3.0, 4.0];
    let projected = bregman_project(&g, &DualBall::new(DualNorm::L2, 2), &outside)?;
    println!("project {outside:?} onto the unit ball: {projected:?}");
    Ok(())
}
