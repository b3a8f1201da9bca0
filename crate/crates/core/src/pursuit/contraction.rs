use super::IterateTrace;
use crate::error::{Error, Result};

/// Absolute slack for distances at the inner solvers' numerical floor.
const FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct ContractionReport {
    pub checked: usize,
    /// Steps `i` where `e_{i+1} > ρ·e_i + c₁‖n‖₂` (beyond the numerical floor).
    pub violations: Vec<usize>,
    /// Largest `e_{i+1} − (ρ·e_i + c₁‖n‖₂)` seen, possibly negative.
    pub worst_margin: f64,
}

impl ContractionReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the error recursion `e_{i+1} ≤ ρ·e_i + c₁‖n‖₂` along a trace,
/// where `e_i = ‖α_i − α*‖₂`. This is an empirical envelope test for
/// supplied constants, not a certificate of the underlying isometry.
pub fn contraction_check(trace: &IterateTrace, rho: f64, c1: f64, noise_norm: f64) -> Result<ContractionReport> {
    if trace.truth_distances.len() < 2 {
        return Err(Error::InvalidArgument(
            "contraction check needs a trace recorded with ground truth".into(),
        ));
    }
    let offset = c1 * noise_norm;
    let mut violations = Vec::new();
    let mut worst = f64::NEG_INFINITY;
    for (i, pair) in trace.truth_distances.windows(2).enumerate() {
        let margin = pair[1] - (rho * pair[0] + offset);
        worst = worst.max(margin);
        if margin > FLOOR {
            violations.push(i);
        }
    }
    Ok(ContractionReport {
        checked: trace.truth_distances.len() - 1,
        violations,
        worst_margin: worst,
    })
}
