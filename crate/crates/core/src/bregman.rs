//! Bregman potentials, distances, gradient maps and projections.
//!
//! Two geometries are wired into the game solver:
//!
//! * squared Euclidean `R(P) = ‖P‖₂²` on the unit ℓ2 ball, where the
//!   Bregman projection is radial scaling;
//! * scaled entropy `R(w) = 2 Σ (wᵢ log wᵢ − wᵢ)` on a lifted simplex of
//!   `2M + 1` weights encoding a point of the unit ℓ1 ball, where the
//!   Bregman projection is plain normalization.
//!
//! Mahalanobis and Itakura-Saito potentials are available for evaluating
//! distances and gradients but have no projection.

use crate::error::{check_len, Error, Result};
use crate::numerics::{dot, norm2, Matrix};

/// Smallest weight fed to a logarithm.
pub const ENTROPY_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq)]
pub enum Potential {
    SquaredEuclidean,
    /// `⟨P, A P⟩` for a symmetric positive semidefinite `A`.
    Mahalanobis(Matrix),
    Entropy,
    ItakuraSaito,
}

/// A potential together with a positive multiplier applied to it.
#[derive(Debug, Clone, PartialEq)]
pub struct BregmanGeometry {
    potential: Potential,
    scale: f64,
}

impl BregmanGeometry {
    pub fn new(potential: Potential, scale: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidArgument(format!("geometry scale must be positive, got {scale}")));
        }
        if let Potential::Mahalanobis(a) = &potential {
            check_mahalanobis(a)?;
        }
        Ok(Self { potential, scale })
    }

    /// `‖P‖₂²`, for which `B(P, Q) = ‖P − Q‖₂²`.
    pub fn squared_euclidean() -> Self {
        Self {
            potential: Potential::SquaredEuclidean,
            scale: 1.0,
        }
    }

    /// Entropy scaled by 2, so that Pinsker's inequality gives
    /// `B(P, Q) ≥ ‖P − Q‖₁²` on the simplex.
    pub fn scaled_entropy() -> Self {
        Self {
            potential: Potential::Entropy,
            scale: 2.0,
        }
    }

    pub fn potential(&self) -> &Potential {
        &self.potential
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    fn name(&self) -> &'static str {
        match self.potential {
            Potential::SquaredEuclidean => "squared-euclidean",
            Potential::Mahalanobis(_) => "mahalanobis",
            Potential::Entropy => "entropy",
            Potential::ItakuraSaito => "itakura-saito",
        }
    }

    fn check_domain(&self, p: &[f64]) -> Result<()> {
        if let Some(i) = p.iter().position(|v| !v.is_finite()) {
            return Err(self.domain_err(format!("entry {i} is not finite")));
        }
        match self.potential {
            Potential::Entropy => match p.iter().position(|&v| v < 0.0) {
                Some(i) => Err(self.domain_err(format!("entry {i} = {} is negative", p[i]))),
                None => Ok(()),
            },
            Potential::ItakuraSaito => match p.iter().position(|&v| v <= 0.0) {
                Some(i) => Err(self.domain_err(format!("entry {i} = {} is not positive", p[i]))),
                None => Ok(()),
            },
            Potential::Mahalanobis(ref a) => check_len("mahalanobis point", a.rows(), p.len()),
            Potential::SquaredEuclidean => Ok(()),
        }
    }

    fn domain_err(&self, detail: String) -> Error {
        Error::Domain {
            geometry: self.name(),
            detail,
        }
    }

    /// `R(P)` including the scale.
    pub fn value(&self, p: &[f64]) -> Result<f64> {
        self.check_domain(p)?;
        let raw = match &self.potential {
            Potential::SquaredEuclidean => dot(p, p),
            Potential::Mahalanobis(a) => dot(p, &a.mul_vec(p)),
            Potential::Entropy => p
                .iter()
                .map(|&v| {
                    let v = v.max(ENTROPY_FLOOR);
                    v * v.ln() - v
                })
                .sum(),
            Potential::ItakuraSaito => p.iter().map(|v| -v.ln()).sum(),
        };
        Ok(self.scale * raw)
    }
}

fn check_mahalanobis(a: &Matrix) -> Result<()> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::InvalidArgument(format!(
            "mahalanobis matrix must be square, got {}x{}",
            n,
            a.cols()
        )));
    }
    let mut scale = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            scale = scale.max(a.get(i, j).abs());
            if (a.get(i, j) - a.get(j, i)).abs() > 1e-12 * (1.0 + a.get(i, j).abs()) {
                return Err(Error::InvalidArgument("mahalanobis matrix is not symmetric".into()));
            }
        }
    }
    // Cholesky of A + εI succeeds iff A is PSD up to ε.
    let jitter = 1e-10 * scale.max(1.0);
    let mut l = vec![0.0; n * n];
    for j in 0..n {
        let mut d = a.get(j, j) + jitter;
        for k in 0..j {
            d -= l[j * n + k] * l[j * n + k];
        }
        if d <= 0.0 {
            return Err(Error::InvalidArgument(
                "mahalanobis matrix is not positive semidefinite".into(),
            ));
        }
        let d = d.sqrt();
        l[j * n + j] = d;
        for i in j + 1..n {
            let mut s = a.get(i, j);
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            l[i * n + j] = s / d;
        }
    }
    Ok(())
}

/// `B_R(P, Q) = R(P) − R(Q) − ⟨P − Q, ∇R(Q)⟩`, evaluated in closed form.
pub fn bregman_distance(g: &BregmanGeometry, p: &[f64], q: &[f64]) -> Result<f64> {
    check_len("bregman_distance", p.len(), q.len())?;
    g.check_domain(p)?;
    g.check_domain(q)?;
    let raw = match &g.potential {
        Potential::SquaredEuclidean => p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>(),
        Potential::Mahalanobis(a) => {
            let d: Vec<f64> = p.iter().zip(q).map(|(x, y)| x - y).collect();
            dot(&d, &a.mul_vec(&d))
        }
        Potential::Entropy => p
            .iter()
            .zip(q)
            .map(|(&pi, &qi)| {
                let (pc, qc) = (pi.max(ENTROPY_FLOOR), qi.max(ENTROPY_FLOOR));
                let log_term = if pi == 0.0 { 0.0 } else { pi * (pc / qc).ln() };
                log_term - (pi - qi)
            })
            .sum(),
        Potential::ItakuraSaito => p
            .iter()
            .zip(q)
            .map(|(&pi, &qi)| {
                let ratio = pi / qi;
                ratio - ratio.ln() - 1.0
            })
            .sum(),
    };
    // Closed forms are nonnegative up to rounding.
    Ok((g.scale * raw).max(0.0))
}

/// `∇R(P)`.
pub fn grad_map(g: &BregmanGeometry, p: &[f64]) -> Result<Vec<f64>> {
    g.check_domain(p)?;
    let s = g.scale;
    Ok(match &g.potential {
        Potential::SquaredEuclidean => p.iter().map(|v| 2.0 * s * v).collect(),
        Potential::Mahalanobis(a) => a.mul_vec(p).into_iter().map(|v| 2.0 * s * v).collect(),
        Potential::Entropy => p.iter().map(|v| s * v.max(ENTROPY_FLOOR).ln()).collect(),
        Potential::ItakuraSaito => p.iter().map(|v| -s / v).collect(),
    })
}

/// Inverse of [`grad_map`]: the point whose gradient is `y`.
pub fn grad_map_inverse(g: &BregmanGeometry, y: &[f64]) -> Result<Vec<f64>> {
    if let Some(i) = y.iter().position(|v| !v.is_finite()) {
        return Err(g.domain_err(format!("gradient entry {i} is not finite")));
    }
    let s = g.scale;
    match &g.potential {
        Potential::SquaredEuclidean => Ok(y.iter().map(|v| v / (2.0 * s)).collect()),
        Potential::Entropy => Ok(y.iter().map(|v| (v / s).exp()).collect()),
        Potential::ItakuraSaito => match y.iter().position(|&v| v >= 0.0) {
            Some(i) => Err(g.domain_err(format!(
                "gradient entry {i} = {} is outside the range (-inf, 0)",
                y[i]
            ))),
            None => Ok(y.iter().map(|v| -s / v).collect()),
        },
        Potential::Mahalanobis(_) => Err(Error::Unsupported(
            "mahalanobis gradient map is not inverted".into(),
        )),
    }
}

/// Which norm ball the dual player lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualNorm {
    L1,
    L2,
}

/// The dual feasible set `{P ∈ ℝ^M : ‖P‖_p ≤ 1}` for `p ∈ {1, 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualBall {
    pub norm: DualNorm,
    pub dim: usize,
}

impl DualBall {
    pub fn new(norm: DualNorm, dim: usize) -> Self {
        Self { norm, dim }
    }

    /// Length of the native representation: `M` for ℓ2, `2M + 1` lifted
    /// weights for ℓ1.
    pub fn native_len(&self) -> usize {
        match self.norm {
            DualNorm::L2 => self.dim,
            DualNorm::L1 => 2 * self.dim + 1,
        }
    }
}

/// Point of the unit ℓ1 ball encoded as simplex weights.
///
/// Layout: `[w⁺₀ … w⁺_{M−1}, w⁻₀ … w⁻_{M−1}, slack]`, all nonnegative and
/// summing to one. The encoded point is `Pᵢ = w⁺ᵢ − w⁻ᵢ`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedSimplexPoint {
    weights: Vec<f64>,
}

impl LiftedSimplexPoint {
    /// Uniform weights `1 / (2M + 1)`.
    pub fn uniform(dim: usize) -> Self {
        let n = 2 * dim + 1;
        Self {
            weights: vec![1.0 / n as f64; n],
        }
    }

    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        if weights.len() % 2 != 1 {
            return Err(Error::InvalidArgument(format!(
                "lifted simplex needs an odd number of weights, got {}",
                weights.len()
            )));
        }
        if let Some(i) = weights.iter().position(|v| !(*v >= 0.0)) {
            return Err(Error::Domain {
                geometry: "lifted-simplex",
                detail: format!("weight {i} = {} is negative", weights[i]),
            });
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::Domain {
                geometry: "lifted-simplex",
                detail: format!("weights sum to {total}, not 1"),
            });
        }
        Ok(Self { weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len() / 2
    }

    pub fn decode(&self) -> Vec<f64> {
        let m = self.dim();
        (0..m).map(|i| self.weights[i] - self.weights[m + i]).collect()
    }

    /// Lifts a dual-space direction `g ∈ ℝ^M` to `(g, −g, 0)` so that
    /// `⟨w, lift(g)⟩ = ⟨decode(w), g⟩`.
    pub fn lift_direction(g: &[f64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(2 * g.len() + 1);
        out.extend_from_slice(g);
        out.extend(g.iter().map(|v| -v));
        out.push(0.0);
        out
    }
}

/// `argmin_{P ∈ ball} B_R(P, Q)` for the supported pairings.
///
/// * squared Euclidean with the ℓ2 ball: `Q` if `‖Q‖₂ ≤ 1`, else `Q / ‖Q‖₂`;
/// * entropy with the ℓ1 ball: `q` holds the `2M + 1` nonnegative lifted
///   weights and the projection onto the simplex is normalization.
pub fn bregman_project(g: &BregmanGeometry, ball: &DualBall, q: &[f64]) -> Result<Vec<f64>> {
    check_len("bregman_project", ball.native_len(), q.len())?;
    match (&g.potential, ball.norm) {
        (Potential::SquaredEuclidean, DualNorm::L2) => {
            let n = norm2(q);
            if n <= 1.0 {
                Ok(q.to_vec())
            } else {
                Ok(q.iter().map(|v| v / n).collect())
            }
        }
        (Potential::Entropy, DualNorm::L1) => {
            g.check_domain(q)?;
            let total: f64 = q.iter().sum();
            if !(total > 0.0 && total.is_finite()) {
                return Err(g.domain_err(format!("weights sum to {total}")));
            }
            Ok(q.iter().map(|v| v / total).collect())
        }
        (_, norm) => Err(Error::Unsupported(format!(
            "no Bregman projection for {} onto the {:?} ball",
            g.name(),
            norm
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::norm1;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn distance_examples() {
        let se = BregmanGeometry::squared_euclidean();
        assert_eq!(bregman_distance(&se, &[1.0, 0.0], &[0.0, 1.0]).unwrap(), 2.0);

        let ent = BregmanGeometry::new(Potential::Entropy, 1.0).unwrap();
        assert_eq!(bregman_distance(&ent, &[0.3, 0.7], &[0.3, 0.7]).unwrap(), 0.0);
        let d = bregman_distance(&ent, &[0.5, 0.5], &[0.25, 0.75]).unwrap();
        let expect = 0.5 * 2f64.ln() + 0.5 * (2.0f64 / 3.0).ln();
        assert!((d - expect).abs() < 1e-15);
        assert!((d - 0.14384).abs() < 1e-5);
    }

    #[test]
    fn distance_matches_definition() {
        // R(P) − R(Q) − ⟨P − Q, ∇R(Q)⟩ for every potential.
        let a = Matrix::from_rows(&[vec![2.0, 0.5], vec![0.5, 1.0]]).unwrap();
        let geos = [
            BregmanGeometry::squared_euclidean(),
            BregmanGeometry::new(Potential::Mahalanobis(a), 1.5).unwrap(),
            BregmanGeometry::scaled_entropy(),
            BregmanGeometry::new(Potential::ItakuraSaito, 0.7).unwrap(),
        ];
        let (p, q) = ([0.4, 1.3], [0.9, 0.2]);
        for g in &geos {
            let grad_q = grad_map(g, &q).unwrap();
            let diff: Vec<f64> = p.iter().zip(&q).map(|(x, y)| x - y).collect();
            let by_def = g.value(&p).unwrap() - g.value(&q).unwrap() - dot(&diff, &grad_q);
            let closed = bregman_distance(g, &p, &q).unwrap();
            assert!((by_def - closed).abs() < 1e-12, "{:?}: {by_def} vs {closed}", g.potential);
        }
    }

    #[test]
    fn itakura_saito_vanishes_on_the_diagonal() {
        let g = BregmanGeometry::new(Potential::ItakuraSaito, 1.0).unwrap();
        assert_eq!(bregman_distance(&g, &[0.2, 3.0], &[0.2, 3.0]).unwrap(), 0.0);
        assert!(bregman_distance(&g, &[0.0, 1.0], &[1.0, 1.0]).is_err());
    }

    #[test]
    fn domain_errors() {
        let ent = BregmanGeometry::scaled_entropy();
        assert!(matches!(bregman_distance(&ent, &[-0.1, 1.1], &[0.5, 0.5]), Err(Error::Domain { .. })));
        assert!(grad_map(&ent, &[f64::NAN]).is_err());
        let is = BregmanGeometry::new(Potential::ItakuraSaito, 1.0).unwrap();
        assert!(grad_map_inverse(&is, &[0.5]).is_err());
        assert!(BregmanGeometry::new(Potential::Entropy, 0.0).is_err());
        let asym = Matrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
        assert!(BregmanGeometry::new(Potential::Mahalanobis(asym), 1.0).is_err());
        let indefinite = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert!(BregmanGeometry::new(Potential::Mahalanobis(indefinite), 1.0).is_err());
        let singular_psd = Matrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert!(BregmanGeometry::new(Potential::Mahalanobis(singular_psd), 1.0).is_ok());
    }

    #[test]
    fn gradient_examples() {
        let se = BregmanGeometry::squared_euclidean();
        assert_eq!(grad_map(&se, &[1.0, 2.0]).unwrap(), vec![2.0, 4.0]);
        let ent = BregmanGeometry::new(Potential::Entropy, 1.0).unwrap();
        let g = grad_map(&ent, &[1.0, std::f64::consts::E]).unwrap();
        assert_eq!(g[0], 0.0);
        assert!((g[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gradient_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let geos = [
            BregmanGeometry::squared_euclidean(),
            BregmanGeometry::scaled_entropy(),
            BregmanGeometry::new(Potential::ItakuraSaito, 3.0).unwrap(),
        ];
        for g in &geos {
            for _ in 0..100 {
                let p: Vec<f64> = (0..5).map(|_| rng.gen_range(0.01..2.0)).collect();
                let back = grad_map_inverse(g, &grad_map(g, &p).unwrap()).unwrap();
                for (a, b) in p.iter().zip(&back) {
                    assert!((a - b).abs() < 1e-12);
                }
            }
        }
        let a = Matrix::identity(2);
        let mah = BregmanGeometry::new(Potential::Mahalanobis(a), 1.0).unwrap();
        assert!(matches!(grad_map_inverse(&mah, &[1.0, 1.0]), Err(Error::Unsupported(_))));
    }

    #[test]
    fn projection_examples() {
        let se = BregmanGeometry::squared_euclidean();
        let ball = DualBall::new(DualNorm::L2, 2);
        let p = bregman_project(&se, &ball, &[3.0, 4.0]).unwrap();
        assert!((p[0] - 0.6).abs() < 1e-15 && (p[1] - 0.8).abs() < 1e-15);
        assert_eq!(bregman_project(&se, &ball, &[0.1, 0.2]).unwrap(), vec![0.1, 0.2]);

        let ent = BregmanGeometry::scaled_entropy();
        let lifted = DualBall::new(DualNorm::L1, 1);
        assert_eq!(bregman_project(&ent, &lifted, &[2.0, 1.0, 1.0]).unwrap(), vec![0.5, 0.25, 0.25]);

        assert!(matches!(bregman_project(&ent, &ball, &[1.0, 1.0]), Err(Error::Unsupported(_))));
        assert!(bregman_project(&se, &ball, &[1.0]).is_err());
    }

    #[test]
    fn simplex_projection_beats_a_grid() {
        // KL(P ‖ Q) minimized over a fine grid of the 2-simplex.
        let ent = BregmanGeometry::new(Potential::Entropy, 1.0).unwrap();
        let q = [2.0, 1.0, 1.0];
        let proj = bregman_project(&ent, &DualBall::new(DualNorm::L1, 1), &q).unwrap();
        let best = bregman_distance(&ent, &proj, &q).unwrap();
        let steps = 400;
        for i in 1..steps {
            for j in 1..(steps - i) {
                let p = [i as f64 / steps as f64, j as f64 / steps as f64, (steps - i - j) as f64 / steps as f64];
                assert!(bregman_distance(&ent, &p, &q).unwrap() >= best - 1e-12);
            }
        }
    }

    #[test]
    fn lifted_point_round_trip() {
        let w = LiftedSimplexPoint::from_weights(vec![0.5, 0.0, 0.1, 0.2, 0.2]).unwrap();
        assert_eq!(w.dim(), 2);
        let p = w.decode();
        assert!((p[0] - 0.4).abs() < 1e-15 && (p[1] + 0.2).abs() < 1e-15);
        assert!(norm1(&p) <= 1.0);
        let u = LiftedSimplexPoint::uniform(3);
        assert_eq!(u.decode(), vec![0.0; 3]);
        assert!(LiftedSimplexPoint::from_weights(vec![0.5, 0.5]).is_err());
        assert!(LiftedSimplexPoint::from_weights(vec![0.5, 0.6, -0.1]).is_err());
        let g = [1.0, -2.0];
        let lifted = LiftedSimplexPoint::lift_direction(&g);
        assert!((dot(w.weights(), &lifted) - dot(&p, &g)).abs() < 1e-15);
    }
}
