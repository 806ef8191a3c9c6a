//! Moments of the per-pixel energy `U_j = (Σᵢ D_ij μ_ij)²` and the
//! concentration tails used to control `(1/n) Σ_j U_j`.

use crate::error::{invalid, Result};

use super::bernoulli_var;
use super::contraction::mn_factor;
use super::spectrum::lambda_matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UjModel {
    /// i.i.d. `{0,1}` entries.
    Iid01,
    /// i.i.d. `{−1,+1}` entries.
    SignedPm1,
    /// `{0,1}` entries following a stationary chain across frames.
    OutFrameMarkov,
}

/// `E[U_j]` for a fixed difference vector `μ = x_{·j} − c_{·j}`.
///
/// * `Iid01`: `p²(Σμ)² + p(1−p)‖μ‖²`
/// * `SignedPm1`: `(2p−1)²(Σμ)² + 4p(1−p)‖μ‖²`
/// * `OutFrameMarkov`: `p²(Σμ)² + p(1−p)·μᵀΛμ`
pub fn expected_uj(model: UjModel, p: f64, alpha: Option<f64>, mu: &[f64]) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("p must lie in [0,1], got {p}")));
    }
    if mu.is_empty() {
        return Err(invalid("mu must have at least one entry"));
    }
    let sum: f64 = mu.iter().sum();
    let energy: f64 = mu.iter().map(|m| m * m).sum();
    let var = bernoulli_var(p);
    Ok(match model {
        UjModel::Iid01 => p * p * sum * sum + var * energy,
        UjModel::SignedPm1 => (2.0 * p - 1.0).powi(2) * sum * sum + 4.0 * var * energy,
        UjModel::OutFrameMarkov => {
            let alpha = alpha.ok_or_else(|| invalid("out-of-frame model needs alpha"))?;
            let lambda = lambda_matrix(alpha, mu.len())?;
            p * p * sum * sum + var * lambda.quadratic_form(mu)
        }
    })
}

/// Almost-sure bound `U_j ≤ B²ρ²` when `‖x‖∞, ‖c‖∞ ≤ ρ/2`.
pub fn uj_upper_bound(b: usize, rho: f64) -> f64 {
    let b = b as f64;
    b * b * rho * rho
}

/// One-sided Hoeffding tail `exp(−2n·ε₁²/B²)` for a deviation of
/// `Bρ²ε₁` in the mean of `n` independent variables in `[0, B²ρ²]`.
pub fn hoeffding_tail(n: usize, b: usize, eps_half: f64) -> Result<f64> {
    if n == 0 || b == 0 || !(eps_half > 0.0) {
        return Err(invalid("hoeffding tail needs n, B, eps > 0"));
    }
    let b = b as f64;
    Ok((-2.0 * n as f64 * eps_half * eps_half / (b * b)).exp())
}

/// Lipschitz constant `2Bρ²` of `d ↦ (Σᵢ dᵢμᵢ)²` per changed mask column.
pub fn markov_lipschitz(b: usize, rho: f64) -> f64 {
    2.0 * b as f64 * rho * rho
}

/// Two-sided tail `2·exp(−t²(1−θ₁)²/(2nc²))` for a `c`-Lipschitz function
/// of `n` steps of a chain with contraction `θ₁`, after substituting
/// `M_n ≤ 1/(1−θ₁)`. Here `t` is the deviation of the sum.
pub fn markov_concentration_tail(n: usize, c_lipschitz: f64, theta1: f64, t: f64) -> Result<f64> {
    mn_factor(theta1, n.max(1))?;
    if n == 0 || !(c_lipschitz > 0.0) || !(t > 0.0) {
        return Err(invalid("markov tail needs n, c, t > 0"));
    }
    let nf = n as f64;
    Ok(2.0 * (-t * t * (1.0 - theta1).powi(2) / (2.0 * nf * c_lipschitz * c_lipschitz)).exp())
}
