use crate::error::Result;
use crate::numerics::{dot, norm2, spectral_norm_sq, IndexSet, Matrix};
use crate::projections::l1_project;

/// Settings for the restricted ℓ1-constrained least-squares solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerSettings {
    /// Stop when the gradient-mapping norm `L‖x − Π(x − ∇/L)‖₂` is at most this.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for InnerSettings {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_iter: 500,
        }
    }
}

/// Margin applied to power-iteration estimates, which approach `‖A‖₂²`
/// from below.
pub(crate) const LIPSCHITZ_MARGIN: f64 = 1.05;

/// `argmin ‖f − Φv‖₂²` over `supp(v) ⊆ support`, `‖v‖₁ ≤ τ`.
///
/// Accelerated projected gradient on the column submatrix with step
/// `1/L`, `L` a power-iteration estimate of `‖Φ_S‖₂²` with a 5% margin,
/// and gradient-based momentum restarts. Starts from `warm` restricted to
/// the support (projected onto the ball). Never returns a point with a
/// larger objective than that starting point.
pub fn l1_constrained_lsq(
    phi: &Matrix,
    f: &[f64],
    support: &IndexSet,
    tau: f64,
    warm: &[f64],
    settings: &InnerSettings,
) -> Result<Vec<f64>> {
    let mut out = vec![0.0; phi.cols()];
    if support.is_empty() {
        return Ok(out);
    }
    let sub = phi.select_columns(support);
    let start: Vec<f64> = support.iter().map(|j| warm[j]).collect();
    let start = l1_project(&start, tau)?;
    let lipschitz = spectral_norm_sq(&sub, 20, 1e-6) * LIPSCHITZ_MARGIN;
    let coef = if lipschitz == 0.0 {
        start
    } else {
        fista(&sub, f, tau, start, lipschitz, settings)?
    };
    for (j, v) in support.iter().zip(coef) {
        out[j] = v;
    }
    Ok(out)
}

fn objective(a: &Matrix, f: &[f64], x: &[f64]) -> f64 {
    let r: Vec<f64> = a.mul_vec(x).iter().zip(f).map(|(ax, fi)| ax - fi).collect();
    0.5 * dot(&r, &r)
}

fn gradient(a: &Matrix, f: &[f64], x: &[f64]) -> Vec<f64> {
    let mut r = a.mul_vec(x);
    r.iter_mut().zip(f).for_each(|(ri, fi)| *ri -= fi);
    a.mul_t_vec(&r)
}

fn fista(a: &Matrix, f: &[f64], tau: f64, start: Vec<f64>, lipschitz: f64, settings: &InnerSettings) -> Result<Vec<f64>> {
    let start_obj = objective(a, f, &start);
    let mut x = start.clone();
    let mut y = start.clone();
    let mut t = 1.0f64;
    for _ in 0..settings.max_iter {
        let g = gradient(a, f, &y);
        let step: Vec<f64> = y.iter().zip(&g).map(|(yi, gi)| yi - gi / lipschitz).collect();
        let x_next = l1_project(&step, tau)?;
        let mapping: Vec<f64> = y.iter().zip(&x_next).map(|(yi, xi)| yi - xi).collect();
        if lipschitz * norm2(&mapping) <= settings.tol {
            x = x_next;
            break;
        }
        // restart momentum when it points uphill
        let uphill = y
            .iter()
            .zip(&x_next)
            .zip(&x)
            .fold(0.0, |acc, ((yi, xn), xi)| acc + (yi - xn) * (xn - xi));
        if uphill > 0.0 {
            t = 1.0;
        }
        let t_next = 0.5 * (1.0 + (1.0 + 4.0 * t * t).sqrt());
        let momentum = (t - 1.0) / t_next;
        y = x_next
            .iter()
            .zip(&x)
            .map(|(xn, xi)| xn + momentum * (xn - xi))
            .collect();
        x = x_next;
        t = t_next;
    }
    if objective(a, f, &x) > start_obj {
        return Ok(start);
    }
    Ok(x)
}
