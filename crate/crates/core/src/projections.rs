//! Euclidean projections onto the k-sparse set, the ℓ1 ball, and their
//! intersection.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::numerics::{norm1, IndexSet};

/// The feasible set `{α : ‖α‖₀ ≤ k, ‖α‖₁ ≤ τ}`.
///
/// `tau` may be `f64::INFINITY`, which switches the norm budget off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintSet {
    pub k: usize,
    pub tau: f64,
}

impl ConstraintSet {
    pub fn new(k: usize, tau: f64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("sparsity budget k must be at least 1".into()));
        }
        if !(tau >= 0.0) {
            return Err(Error::InvalidArgument(format!("l1 radius must be >= 0, got {tau}")));
        }
        Ok(Self { k, tau })
    }

    /// Whether `x` lies in the set, allowing `slack` on the ℓ1 budget.
    pub fn contains(&self, x: &[f64], slack: f64) -> bool {
        crate::numerics::l0(x) <= self.k && norm1(x) <= self.tau + slack
    }
}

fn by_magnitude_then_index(x: &[f64]) -> impl Fn(&usize, &usize) -> Ordering + '_ {
    move |&a, &b| x[b].abs().total_cmp(&x[a].abs()).then(a.cmp(&b))
}

/// Indices of the `k` largest-magnitude entries of `x` among `candidates`,
/// lowest index first on ties. Returns every candidate if there are at most `k`.
pub fn top_k_among(x: &[f64], k: usize, candidates: impl IntoIterator<Item = usize>) -> IndexSet {
    let mut idx: Vec<usize> = candidates.into_iter().collect();
    if idx.len() > k {
        let cmp = by_magnitude_then_index(x);
        if k > 0 {
            idx.select_nth_unstable_by(k - 1, &cmp);
        }
        idx.truncate(k);
    }
    IndexSet::from_unsorted(idx)
}

/// Indices of the `k` largest-magnitude entries of `x`.
pub fn top_k_magnitude(x: &[f64], k: usize) -> IndexSet {
    top_k_among(x, k, 0..x.len())
}

/// Keeps the `k` largest-magnitude entries and zeroes the rest.
///
/// Ties go to the lowest index. `k >= len(w)` returns `w` unchanged and
/// `k = 0` returns zeros.
pub fn hard_threshold(w: &[f64], k: usize) -> Vec<f64> {
    if k >= w.len() {
        return w.to_vec();
    }
    let keep = top_k_magnitude(w, k);
    let mut out = vec![0.0; w.len()];
    for i in keep.iter() {
        out[i] = w[i];
    }
    out
}

/// Euclidean projection onto `{x : ‖x‖₁ ≤ τ}`.
///
/// Feasible inputs are returned untouched. Otherwise magnitudes are
/// soft-thresholded by the θ that puts the ℓ1 norm on the boundary, with θ
/// found by sorting magnitudes and scanning the prefix sums. The result
/// satisfies `norm1(out) <= tau` exactly in floating point.
pub fn l1_project(w: &[f64], tau: f64) -> Result<Vec<f64>> {
    if !(tau >= 0.0) {
        return Err(Error::InvalidArgument(format!("l1 radius must be >= 0, got {tau}")));
    }
    if norm1(w) <= tau {
        return Ok(w.to_vec());
    }
    if tau == 0.0 {
        return Ok(vec![0.0; w.len()]);
    }
    let mut mags: Vec<f64> = w.iter().map(|v| v.abs()).collect();
    mags.sort_unstable_by(|a, b| b.total_cmp(a));

    let mut prefix = 0.0;
    let mut active = 0usize;
    let mut active_sum = 0.0;
    for (j, &u) in mags.iter().enumerate() {
        prefix += u;
        if u - (prefix - tau) / (j + 1) as f64 > 0.0 {
            active = j + 1;
            active_sum = prefix;
        }
    }
    let mut theta = ((active_sum - tau) / active as f64).max(0.0);
    let mut out = soft_threshold(w, theta);
    // Rounding can leave the sum a few ulps above tau.
    for _ in 0..64 {
        let excess = norm1(&out) - tau;
        if excess <= 0.0 {
            break;
        }
        let bump = (excess / active as f64).max(theta * f64::EPSILON).max(f64::MIN_POSITIVE);
        theta += bump;
        out = soft_threshold(w, theta);
    }
    Ok(out)
}

fn soft_threshold(w: &[f64], theta: f64) -> Vec<f64> {
    w.iter()
        .map(|&v| {
            let m = v.abs() - theta;
            if m > 0.0 {
                m.copysign(v)
            } else {
                0.0
            }
        })
        .collect()
}

/// Euclidean projection onto the joint set: hard threshold to `k`, then
/// project the survivors onto the ℓ1 ball.
pub fn project_k_tau(w: &[f64], c: &ConstraintSet) -> Vec<f64> {
    let kept = hard_threshold(w, c.k);
    if c.tau.is_infinite() {
        return kept;
    }
    l1_project(&kept, c.tau).expect("ConstraintSet guarantees tau >= 0")
}

#[cfg(test)]
pub(crate) mod oracle {
    //! Exhaustive-support reference for the joint projection.

    /// θ by bisection on `Σ max(|wᵢ| − θ, 0) = τ`.
    pub fn l1_project_bisect(w: &[f64], tau: f64) -> Vec<f64> {
        let total: f64 = w.iter().map(|v| v.abs()).sum();
        if total <= tau {
            return w.to_vec();
        }
        let (mut lo, mut hi) = (0.0f64, w.iter().fold(0.0f64, |a, v| a.max(v.abs())));
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let s: f64 = w.iter().map(|v| (v.abs() - mid).max(0.0)).sum();
            if s > tau {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let theta = 0.5 * (lo + hi);
        w.iter().map(|&v| (v.abs() - theta).max(0.0).copysign(v)).collect()
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k.min(n), &mut cur, &mut out);
        out
    }

    /// Minimum squared distance from `w` to the joint set, over all supports.
    pub fn joint_projection_distance_sq(w: &[f64], k: usize, tau: f64) -> f64 {
        subsets(w.len(), k)
            .into_iter()
            .map(|support| {
                let restricted: Vec<f64> = support.iter().map(|&i| w[i]).collect();
                let proj = l1_project_bisect(&restricted, tau);
                let mut d = 0.0;
                for (i, &wi) in w.iter().enumerate() {
                    match support.iter().position(|&s| s == i) {
                        Some(p) => d += (wi - proj[p]).powi(2),
                        None => d += wi * wi,
                    }
                }
                d
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Minimum squared distance from `w` to the k-sparse set, over all supports.
    pub fn hard_threshold_distance_sq(w: &[f64], k: usize) -> f64 {
        subsets(w.len(), k)
            .into_iter()
            .map(|support| {
                w.iter()
                    .enumerate()
                    .filter(|(i, _)| !support.contains(i))
                    .map(|(_, v)| v * v)
                    .sum::<f64>()
            })
            .fold(f64::INFINITY, f64::min)
    }
}
