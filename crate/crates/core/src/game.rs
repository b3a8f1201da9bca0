//! Primal-dual game solver for sparse approximation in ℓ2 and ℓ∞.
//!
//! Mindy picks sparse vectors from the ℓ1 ball of radius τ, Max picks dual
//! points from the unit ball of the conjugate norm, and the shared loss is
//! the bilinear form `L(P, α) = ⟨P, Φα − f⟩`. Each round Mindy plays the
//! exact best response to Max's current point (a single signed, τ-scaled
//! coordinate) and Max takes one mirror step toward the loss gradient,
//! followed by a Bregman projection back onto the dual ball. After `T`
//! rounds the average of Mindy's plays is `T`-sparse, lies in the ℓ1 ball
//! and has residual within `DG/(2√T)` of the best ℓ1-constrained residual.
//!
//! For `q = 2` the dual ball is the ℓ2 ball and Max uses the squared
//! Euclidean potential (additive updates). For `q = ∞` the dual ball is the
//! ℓ1 ball, encoded on a lifted simplex, and Max uses the scaled entropy
//! (multiplicative updates).

use crate::bregman::{
    bregman_project, grad_map, grad_map_inverse, BregmanGeometry, DualBall, DualNorm, LiftedSimplexPoint,
};
use crate::error::{check_len, Error, Result};
use crate::numerics::{argmax_abs, dot, lp_norm, norm1, residual, Matrix};
use crate::result::{SolverResult, Termination};

/// Error-norm exponent `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorNorm {
    L2,
    LInf,
}

impl ErrorNorm {
    pub fn exponent(self) -> f64 {
        match self {
            ErrorNorm::L2 => 2.0,
            ErrorNorm::LInf => f64::INFINITY,
        }
    }

    /// Conjugate exponent `p = q/(q−1)` of the dual ball.
    pub fn dual(self) -> DualNorm {
        match self {
            ErrorNorm::L2 => DualNorm::L2,
            ErrorNorm::LInf => DualNorm::L1,
        }
    }

    pub fn geometry(self) -> BregmanGeometry {
        match self {
            ErrorNorm::L2 => BregmanGeometry::squared_euclidean(),
            ErrorNorm::LInf => BregmanGeometry::scaled_entropy(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepSize {
    /// `η = 2D / (G√T)`
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameConfig {
    pub rounds: usize,
    pub norm: ErrorNorm,
    pub tau: f64,
    pub eta: StepSize,
}

impl GameConfig {
    pub fn new(rounds: usize, norm: ErrorNorm, tau: f64) -> Self {
        Self {
            rounds,
            norm,
            tau,
            eta: StepSize::Auto,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.rounds == 0 {
            return Err(Error::InvalidArgument("game needs at least one round".into()));
        }
        if !(self.tau > 0.0 && self.tau.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "game needs a finite tau > 0, got {}",
                self.tau
            )));
        }
        if let StepSize::Fixed(eta) = self.eta {
            if !(eta >= 0.0 && eta.is_finite()) {
                return Err(Error::InvalidArgument(format!("step size must be >= 0, got {eta}")));
            }
        }
        Ok(())
    }
}

/// Max's strategy in its native representation.
#[derive(Debug, Clone, PartialEq)]
pub enum DualPoint {
    /// A point of the unit ℓ2 ball.
    Euclidean(Vec<f64>),
    /// Weights on the lifted simplex encoding a point of the unit ℓ1 ball.
    Lifted(LiftedSimplexPoint),
}

impl DualPoint {
    /// The starting point minimizing the distance bound `D`: zero for the ℓ2
    /// ball, uniform weights for the lifted ℓ1 ball.
    pub fn initial(norm: DualNorm, dim: usize) -> Self {
        match norm {
            DualNorm::L2 => DualPoint::Euclidean(vec![0.0; dim]),
            DualNorm::L1 => DualPoint::Lifted(LiftedSimplexPoint::uniform(dim)),
        }
    }

    /// The point `P ∈ ℝ^M`.
    pub fn to_vector(&self) -> Vec<f64> {
        match self {
            DualPoint::Euclidean(p) => p.clone(),
            DualPoint::Lifted(w) => w.decode(),
        }
    }

    fn native(&self) -> &[f64] {
        match self {
            DualPoint::Euclidean(p) => p,
            DualPoint::Lifted(w) => w.weights(),
        }
    }

    fn norm(&self) -> DualNorm {
        match self {
            DualPoint::Euclidean(_) => DualNorm::L2,
            DualPoint::Lifted(_) => DualNorm::L1,
        }
    }
}

/// Bounds that certify a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameCertificate {
    /// Largest residual over 1-sparse plays of the ℓ1 ball.
    pub g: f64,
    /// `√(max_P B(P, P¹))` over the dual ball.
    pub d: f64,
    pub eta: f64,
    /// `DG / (2√T)`
    pub regret_bound: f64,
    /// `‖Φα̂ − f‖_q`
    pub achieved_residual: f64,
}

/// `L(P, α) = ⟨P, Φα − f⟩`
pub fn loss(p: &[f64], alpha: &[f64], phi: &Matrix, f: &[f64]) -> Result<f64> {
    check_len("loss dual point", phi.rows(), p.len())?;
    check_len("loss primal point", phi.cols(), alpha.len())?;
    check_len("loss observation", phi.rows(), f.len())?;
    Ok(dot(p, &residual(phi, alpha, f)))
}

/// Dual point attaining `max_{‖P‖_p ≤ 1} L(P, α) = ‖Φα − f‖_q`.
///
/// `q = 2` gives the normalized residual; `q = ∞` gives the signed
/// indicator of the largest-magnitude residual entry (lowest index on
/// ties). A zero residual yields the zero dual point.
pub fn holder_optimal_dual(alpha: &[f64], phi: &Matrix, f: &[f64], norm: ErrorNorm) -> Result<Vec<f64>> {
    check_len("holder_optimal_dual primal point", phi.cols(), alpha.len())?;
    check_len("holder_optimal_dual observation", phi.rows(), f.len())?;
    Ok(holder_dual_of_residual(&residual(phi, alpha, f), norm))
}

fn holder_dual_of_residual(r: &[f64], norm: ErrorNorm) -> Vec<f64> {
    let mut p = vec![0.0; r.len()];
    match norm {
        ErrorNorm::L2 => {
            let n = lp_norm(r, 2.0);
            if n > 0.0 {
                p.iter_mut().zip(r).for_each(|(pi, ri)| *pi = ri / n);
            }
        }
        ErrorNorm::LInf => {
            if let Some(i) = argmax_abs(r) {
                if r[i] != 0.0 {
                    p[i] = r[i].signum();
                }
            }
        }
    }
    p
}

/// Mindy's exact best response `argmin_{‖α‖₁ ≤ τ} L(P, α)`.
///
/// With `r = ΦᵀP` and `i` the index of its largest magnitude entry (lowest
/// on ties) the response is `−τ·sign(rᵢ)·eᵢ`. When `r = 0` every feasible
/// point ties and the zero vector is returned.
pub fn mindy_best_response(p: &[f64], phi: &Matrix, f: &[f64], tau: f64) -> Result<Vec<f64>> {
    check_len("mindy_best_response dual point", phi.rows(), p.len())?;
    check_len("mindy_best_response observation", phi.rows(), f.len())?;
    if !(tau > 0.0) {
        return Err(Error::InvalidArgument(format!("tau must be > 0, got {tau}")));
    }
    let mut alpha = vec![0.0; phi.cols()];
    if let Some((i, sign)) = best_coordinate(p, phi) {
        alpha[i] = -tau * sign;
    }
    Ok(alpha)
}

/// Index and sign of the largest-magnitude entry of `ΦᵀP`, if nonzero.
fn best_coordinate(p: &[f64], phi: &Matrix) -> Option<(usize, f64)> {
    let r = phi.mul_t_vec(p);
    let i = argmax_abs(&r)?;
    (r[i] != 0.0).then(|| (i, r[i].signum()))
}

/// One regularized step for Max followed by the Bregman projection.
///
/// Solves `∇R(Q) = ∇R(P) + η(Φα_t − f)` in the dual point's native
/// geometry (for the lifted simplex the residual enters the positive-part
/// weights with `+`, the negative-part weights with `−`, and the slack with
/// 0), then projects `Q` back onto the dual ball. `residual_t` is
/// `Φα_t − f`.
pub fn max_update(dual: &DualPoint, residual_t: &[f64], eta: f64) -> Result<DualPoint> {
    let geometry = match dual.norm() {
        DualNorm::L2 => BregmanGeometry::squared_euclidean(),
        DualNorm::L1 => BregmanGeometry::scaled_entropy(),
    };
    let ball = DualBall::new(dual.norm(), residual_t.len());
    let direction = match dual {
        DualPoint::Euclidean(_) => residual_t.to_vec(),
        DualPoint::Lifted(_) => LiftedSimplexPoint::lift_direction(residual_t),
    };
    check_len("max_update residual", dual.native().len(), direction.len())?;
    let mut y = grad_map(&geometry, dual.native())?;
    y.iter_mut().zip(&direction).for_each(|(yi, gi)| *yi += eta * gi);
    if dual.norm() == DualNorm::L1 {
        // Shifting the entropy gradient rescales Q, which normalization undoes.
        let top = y.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
        y.iter_mut().for_each(|v| *v -= top);
    }
    let q = grad_map_inverse(&geometry, &y)?;
    let projected = bregman_project(&geometry, &ball, &q)?;
    Ok(match dual {
        DualPoint::Euclidean(_) => DualPoint::Euclidean(projected),
        DualPoint::Lifted(_) => DualPoint::Lifted(LiftedSimplexPoint::from_weights(projected)?),
    })
}

/// `G = max_{α 1-sparse, ‖α‖₁ ≤ τ} ‖Φα − f‖_q`, attained at one of the
/// `2N` points `±τ eⱼ` (or at 0 when `τ = 0`).
pub fn compute_g(phi: &Matrix, f: &[f64], tau: f64, norm: ErrorNorm) -> Result<f64> {
    check_len("compute_g observation", phi.rows(), f.len())?;
    let q = norm.exponent();
    let mut g = lp_norm(f, q);
    if tau == 0.0 {
        return Ok(g);
    }
    let mut candidate = vec![0.0; phi.rows()];
    for j in 0..phi.cols() {
        for sign in [1.0, -1.0] {
            for (i, c) in candidate.iter_mut().enumerate() {
                *c = sign * tau * phi.get(i, j) - f[i];
            }
            g = g.max(lp_norm(&candidate, q));
        }
    }
    Ok(g)
}

/// `D` for the starting point chosen by [`DualPoint::initial`].
///
/// ℓ2 ball from 0: `B(P, 0) = ‖P‖₂² ≤ 1`. Lifted ℓ1 ball from the uniform
/// weights: `2·KL(w ‖ u) ≤ 2 ln(2M + 1)`.
pub fn distance_bound(norm: ErrorNorm, dual_dim: usize) -> f64 {
    match norm {
        ErrorNorm::L2 => 1.0,
        ErrorNorm::LInf => (2.0 * ((2 * dual_dim + 1) as f64).ln()).sqrt(),
    }
}

/// Running state of the repeated game.
#[derive(Debug, Clone)]
pub struct GameState {
    dual: DualPoint,
    /// Signed number of times each coordinate was played; the sum of plays
    /// is `τ·counts`.
    counts: Vec<i64>,
    /// `Φ·(sum of plays)`
    phi_sum: Vec<f64>,
    round: usize,
    losses: Vec<f64>,
    average_residuals: Vec<f64>,
    degenerate_rounds: usize,
}

impl GameState {
    pub fn new(phi: &Matrix, norm: ErrorNorm) -> Self {
        Self {
            dual: DualPoint::initial(norm.dual(), phi.rows()),
            counts: vec![0; phi.cols()],
            phi_sum: vec![0.0; phi.rows()],
            round: 0,
            losses: Vec::new(),
            average_residuals: Vec::new(),
            degenerate_rounds: 0,
        }
    }

    pub fn dual(&self) -> &DualPoint {
        &self.dual
    }

    pub fn round(&self) -> usize {
        self.round
    }

    /// `L(P^t, α^t)` for every round played.
    pub fn losses(&self) -> &[f64] {
        &self.losses
    }

    /// `‖Φ(Σ_{s≤t} α^s / t) − f‖_q` after every round.
    pub fn average_residuals(&self) -> &[f64] {
        &self.average_residuals
    }

    /// Rounds in which `ΦᵀP = 0` and Mindy played zero.
    pub fn degenerate_rounds(&self) -> usize {
        self.degenerate_rounds
    }

    /// Average of Mindy's plays so far, scaled so that `‖·‖₁ ≤ τ` holds
    /// exactly in floating point.
    pub fn average(&self, tau: f64) -> Vec<f64> {
        if self.round == 0 {
            return vec![0.0; self.counts.len()];
        }
        let t = self.round as f64;
        let mut avg: Vec<f64> = self.counts.iter().map(|&c| tau * (c as f64 / t)).collect();
        clamp_l1(&mut avg, tau);
        avg
    }

    /// Plays one round: Mindy's best response, then Max's update.
    /// Returns Mindy's play.
    pub fn step(&mut self, phi: &Matrix, f: &[f64], tau: f64, eta: f64, norm: ErrorNorm) -> Result<Vec<f64>> {
        let p = self.dual.to_vector();
        let mut play = vec![0.0; phi.cols()];
        // Φα^t − f
        let mut resid: Vec<f64> = f.iter().map(|v| -v).collect();
        match best_coordinate(&p, phi) {
            Some((i, sign)) => {
                let value = -tau * sign;
                play[i] = value;
                self.counts[i] -= sign as i64;
                for (r, row) in resid.iter_mut().enumerate() {
                    let contrib = value * phi.get(r, i);
                    *row += contrib;
                    self.phi_sum[r] += contrib;
                }
            }
            None => self.degenerate_rounds += 1,
        }
        self.losses.push(dot(&p, &resid));
        self.round += 1;

        let t = self.round as f64;
        let avg_resid: Vec<f64> = self.phi_sum.iter().zip(f).map(|(s, fi)| s / t - fi).collect();
        self.average_residuals.push(lp_norm(&avg_resid, norm.exponent()));

        self.dual = max_update(&self.dual, &resid, eta)?;
        Ok(play)
    }
}

/// Shrinks `x` until `Σ|xᵢ| ≤ tau` holds as computed.
pub(crate) fn clamp_l1(x: &mut [f64], tau: f64) {
    for _ in 0..64 {
        let total = norm1(x);
        if total <= tau {
            return;
        }
        let factor = (tau / total) * (1.0 - f64::EPSILON);
        x.iter_mut().for_each(|v| *v *= factor);
    }
}

/// Output of [`game_solve`].
#[derive(Debug, Clone)]
pub struct GameOutcome {
    pub result: SolverResult,
    pub certificate: GameCertificate,
    pub state: GameState,
}

/// Runs `T` rounds and returns the average play `α̂`.
///
/// `α̂` has at most `T` nonzeros and `‖α̂‖₁ ≤ τ`. With the automatic step
/// `η = 2D/(G√T)` the residual satisfies
/// `‖Φα̂ − f‖_q ≤ min_{‖α‖₁ ≤ τ} ‖Φα − f‖_q + DG/(2√T)`.
pub fn game_solve(phi: &Matrix, f: &[f64], cfg: &GameConfig) -> Result<GameOutcome> {
    cfg.validate()?;
    check_len("game_solve observation", phi.rows(), f.len())?;
    let q = cfg.norm.exponent();
    let g = compute_g(phi, f, cfg.tau, cfg.norm)?;
    let d = distance_bound(cfg.norm, phi.rows());
    let t = cfg.rounds as f64;
    let regret_bound = d * g / (2.0 * t.sqrt());
    let mut state = GameState::new(phi, cfg.norm);

    if g == 0.0 {
        let alpha = vec![0.0; phi.cols()];
        return Ok(GameOutcome {
            result: SolverResult {
                alpha,
                residual_l2: 0.0,
                residual: 0.0,
                iterations: 0,
                termination: Termination::TrivialInput,
                history: Vec::new(),
            },
            certificate: GameCertificate {
                g,
                d,
                eta: 0.0,
                regret_bound,
                achieved_residual: 0.0,
            },
            state,
        });
    }

    let eta = match cfg.eta {
        StepSize::Auto => 2.0 * d / (g * t.sqrt()),
        StepSize::Fixed(eta) => eta,
    };
    for _ in 0..cfg.rounds {
        state.step(phi, f, cfg.tau, eta, cfg.norm)?;
    }
    let alpha = state.average(cfg.tau);
    let r = residual(phi, &alpha, f);
    let achieved = lp_norm(&r, q);
    Ok(GameOutcome {
        result: SolverResult {
            residual_l2: lp_norm(&r, 2.0),
            residual: achieved,
            iterations: cfg.rounds,
            termination: Termination::RoundsCompleted,
            history: state.average_residuals().to_vec(),
            alpha,
        },
        certificate: GameCertificate {
            g,
            d,
            eta,
            regret_bound,
            achieved_residual: achieved,
        },
        state,
    })
}

/// The correlated system `(ΦᵀΦ, Φᵀf)` whose ℓ∞ residual is the Dantzig
/// selector criterion.
pub fn dantzig_transform(phi: &Matrix, f: &[f64]) -> Result<(Matrix, Vec<f64>)> {
    check_len("dantzig_transform observation", phi.rows(), f.len())?;
    Ok((phi.gram(), phi.mul_t_vec(f)))
}

/// Game solver on the Dantzig form `min ‖ΦᵀΦα − Φᵀf‖_∞` over the ℓ1 ball.
/// `cfg.norm` is overridden to ℓ∞. `SolverResult::residual_l2` still refers
/// to the original system `‖Φα̂ − f‖₂`.
pub fn game_solve_dantzig(phi: &Matrix, f: &[f64], cfg: &GameConfig) -> Result<GameOutcome> {
    let (gram, corr) = dantzig_transform(phi, f)?;
    let cfg = GameConfig {
        norm: ErrorNorm::LInf,
        ..*cfg
    };
    let mut out = game_solve(&gram, &corr, &cfg)?;
    out.result.residual_l2 = lp_norm(&residual(phi, &out.result.alpha, f), 2.0);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{l0, norm_inf};

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn loss_examples() {
        let phi = Matrix::identity(2);
        assert_eq!(loss(&[0.0, 0.0], &[2.0, 5.0], &phi, &[1.0, 1.0]).unwrap(), 0.0);
        assert_eq!(loss(&[1.0, 0.0], &[2.0, 5.0], &phi, &[0.0, 0.0]).unwrap(), 2.0);
        assert!(loss(&[1.0], &[2.0, 5.0], &phi, &[0.0, 0.0]).is_err());
    }

    #[test]
    fn holder_dual_examples() {
        let phi = Matrix::identity(2);
        // residual (3, 4)
        let p = holder_optimal_dual(&[3.0, 4.0], &phi, &[0.0, 0.0], ErrorNorm::L2).unwrap();
        assert!(close(&p, &[0.6, 0.8], 1e-15));
        assert!((loss(&p, &[3.0, 4.0], &phi, &[0.0, 0.0]).unwrap() - 5.0).abs() < 1e-14);

        let phi3 = Matrix::identity(3);
        let p = holder_optimal_dual(&[1.0, -7.0, 2.0], &phi3, &[0.0; 3], ErrorNorm::LInf).unwrap();
        assert_eq!(p, vec![0.0, -1.0, 0.0]);
        assert_eq!(loss(&p, &[1.0, -7.0, 2.0], &phi3, &[0.0; 3]).unwrap(), 7.0);

        let p = holder_optimal_dual(&[1.0, 1.0], &phi, &[1.0, 1.0], ErrorNorm::L2).unwrap();
        assert_eq!(p, vec![0.0, 0.0]);
        let p = holder_optimal_dual(&[1.0, 1.0], &phi, &[1.0, 1.0], ErrorNorm::LInf).unwrap();
        assert_eq!(p, vec![0.0, 0.0]);
    }

    #[test]
    fn linf_dual_ties_go_to_lowest_index() {
        let phi = Matrix::identity(3);
        let p = holder_optimal_dual(&[2.0, -2.0, 1.0], &phi, &[0.0; 3], ErrorNorm::LInf).unwrap();
        assert_eq!(p, vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn mindy_examples() {
        let phi = Matrix::identity(2);
        let f = [0.5, -1.5];
        assert_eq!(mindy_best_response(&[1.0, 0.0], &phi, &f, 3.0).unwrap(), vec![-3.0, 0.0]);
        assert_eq!(mindy_best_response(&[0.0, -2.0], &phi, &f, 1.0).unwrap(), vec![0.0, 1.0]);
        assert_eq!(mindy_best_response(&[0.0, 0.0], &phi, &f, 1.0).unwrap(), vec![0.0, 0.0]);
        assert!(mindy_best_response(&[0.0, 0.0], &phi, &f, 0.0).is_err());
    }

    #[test]
    fn mindy_attains_the_holder_bound() {
        let phi = Matrix::from_rows(&[vec![1.0, -2.0, 0.5], vec![0.3, 0.1, -1.0]]).unwrap();
        let f = [0.2, -0.7];
        let p = [0.6, -0.8];
        let tau = 1.7;
        let a = mindy_best_response(&p, &phi, &f, tau).unwrap();
        let r = phi.mul_t_vec(&p);
        let expect = -tau * norm_inf(&r) - dot(&p, &f);
        assert!((loss(&p, &a, &phi, &f).unwrap() - expect).abs() < 1e-14);
        // no vertex of the ℓ1 ball does better
        for j in 0..3 {
            for s in [1.0, -1.0] {
                let mut v = vec![0.0; 3];
                v[j] = s * tau;
                assert!(loss(&p, &v, &phi, &f).unwrap() >= expect - 1e-14);
            }
        }
    }

    #[test]
    fn max_update_examples() {
        let p = DualPoint::Euclidean(vec![0.3, -0.2]);
        assert_eq!(max_update(&p, &[5.0, 1.0], 0.0).unwrap(), p);

        let zero = DualPoint::Euclidean(vec![0.0, 0.0]);
        let q = max_update(&zero, &[0.3, 0.0], 1.0).unwrap();
        assert!(close(&q.to_vector(), &[0.15, 0.0], 1e-16));

        let q = max_update(&zero, &[3.0, 4.0], 4.0).unwrap();
        assert!(close(&q.to_vector(), &[0.6, 0.8], 1e-15));
    }

    #[test]
    fn lifted_max_update_is_multiplicative() {
        let start = DualPoint::initial(DualNorm::L1, 2);
        assert_eq!(max_update(&start, &[1.0, -3.0], 0.0).unwrap(), start);
        let next = max_update(&start, &[1.0, -3.0], 0.5).unwrap();
        let DualPoint::Lifted(w) = &next else { panic!("expected lifted point") };
        // w ∝ u · exp(η g / 2) with g = (1, −3, −1, 3, 0)
        let raw: Vec<f64> = [1.0f64, -3.0, -1.0, 3.0, 0.0].iter().map(|g| (0.25 * g).exp()).collect();
        let total: f64 = raw.iter().sum();
        let expect: Vec<f64> = raw.iter().map(|v| v / total).collect();
        assert!(close(w.weights(), &expect, 1e-15));
        let p = next.to_vector();
        assert!(p[0] > 0.0 && p[1] < 0.0 && norm1(&p) <= 1.0);
    }

    #[test]
    fn compute_g_examples() {
        let phi = Matrix::identity(2);
        assert_eq!(compute_g(&phi, &[0.0, 0.0], 1.0, ErrorNorm::L2).unwrap(), 1.0);
        assert_eq!(compute_g(&phi, &[1.0, 0.0], 1.0, ErrorNorm::L2).unwrap(), 2.0);
        assert_eq!(compute_g(&phi, &[3.0, -4.0], 0.0, ErrorNorm::L2).unwrap(), 5.0);
        assert_eq!(compute_g(&phi, &[3.0, -4.0], 0.0, ErrorNorm::LInf).unwrap(), 4.0);
    }

    #[test]
    fn zero_problem_returns_immediately() {
        let phi = Matrix::zeros(3, 4);
        let out = game_solve(&phi, &[0.0; 3], &GameConfig::new(10, ErrorNorm::L2, 1.0)).unwrap();
        assert_eq!(out.result.alpha, vec![0.0; 4]);
        assert_eq!(out.result.termination, Termination::TrivialInput);
    }

    #[test]
    fn zero_observation_meets_the_bound() {
        let phi = Matrix::from_rows(&[vec![1.0, 0.5, -0.3], vec![0.2, -1.0, 0.8]]).unwrap();
        let cfg = GameConfig::new(50, ErrorNorm::L2, 2.0);
        let out = game_solve(&phi, &[0.0, 0.0], &cfg).unwrap();
        let c = out.certificate;
        assert!(c.achieved_residual <= c.regret_bound);
        assert!(l0(&out.result.alpha) <= 50 && norm1(&out.result.alpha) <= 2.0);
    }

    #[test]
    fn config_validation() {
        let phi = Matrix::identity(2);
        let f = [1.0, 0.0];
        assert!(game_solve(&phi, &f, &GameConfig::new(0, ErrorNorm::L2, 1.0)).is_err());
        assert!(game_solve(&phi, &f, &GameConfig::new(5, ErrorNorm::L2, 0.0)).is_err());
        let mut cfg = GameConfig::new(5, ErrorNorm::L2, 1.0);
        cfg.eta = StepSize::Fixed(-1.0);
        assert!(game_solve(&phi, &f, &cfg).is_err());
    }

    #[test]
    fn identity_problem_converges_toward_projection() {
        // min ‖α − f‖₂ over ‖α‖₁ ≤ 2 with f = (3, 1) is (2, 0), residual √2.
        let phi = Matrix::identity(2);
        let f = [3.0, 1.0];
        let out = game_solve(&phi, &f, &GameConfig::new(400, ErrorNorm::L2, 2.0)).unwrap();
        let c = out.certificate;
        assert!(c.achieved_residual <= 2f64.sqrt() + c.regret_bound);
        assert!(norm1(&out.result.alpha) <= 2.0);
    }

    #[test]
    fn per_round_plays_are_one_sparse_with_full_budget() {
        let phi = Matrix::from_rows(&[vec![1.0, 0.5, -0.3, 0.0], vec![0.2, -1.0, 0.8, 0.4], vec![0.0, 0.3, 0.1, -0.9]]).unwrap();
        let f = [0.4, -0.2, 0.7];
        for norm in [ErrorNorm::L2, ErrorNorm::LInf] {
            let mut state = GameState::new(&phi, norm);
            let eta = 0.3;
            for _ in 0..30 {
                let play = state.step(&phi, &f, 1.5, eta, norm).unwrap();
                if play.iter().any(|v| *v != 0.0) {
                    assert_eq!(l0(&play), 1);
                    assert_eq!(norm1(&play), 1.5);
                }
                let p = state.dual().to_vector();
                match norm {
                    ErrorNorm::L2 => assert!(crate::numerics::norm2(&p) <= 1.0 + 1e-15),
                    ErrorNorm::LInf => assert!(norm1(&p) <= 1.0 + 1e-12),
                }
                let avg = state.average(1.5);
                assert!(norm1(&avg) <= 1.5);
                assert!(l0(&avg) <= state.round());
            }
            // only the very first round starts from P = 0
            assert_eq!(state.degenerate_rounds(), 1);
        }
    }

    #[test]
    fn clamp_l1_enforces_budget() {
        let mut x = vec![0.1; 10];
        clamp_l1(&mut x, 0.9999999999999999);
        assert!(norm1(&x) <= 0.9999999999999999);
    }

    #[test]
    fn dantzig_transform_shapes() {
        let phi = Matrix::from_rows(&[vec![1.0, 2.0, 0.0], vec![0.0, 1.0, -1.0]]).unwrap();
        let (g, c) = dantzig_transform(&phi, &[1.0, 2.0]).unwrap();
        assert_eq!((g.rows(), g.cols()), (3, 3));
        assert_eq!(c, vec![1.0, 4.0, -2.0]);
    }
}
