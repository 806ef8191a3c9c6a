use std::f64::consts::LN_2;

use crate::error::{invalid, Error, Result};
use crate::masks::{MarkovMaskSpec, Orientation};

use super::contraction::theta1_closed;
use super::spectrum::{lambda_extremes, lambda_matrix};
use super::{bernoulli_var, BoundParams, BoundReport, TheoremTag};

fn check_density(p: f64) -> Result<bool> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("mask density p must lie in [0,1], got {p}")));
    }
    Ok(p > 0.0 && p < 1.0)
}

/// `1 − 2^{Br+1}·exp(−nε²/(2B²))`, evaluated in the log domain.
fn prob_union_statement(params: &BoundParams) -> f64 {
    let b = params.b as f64;
    let exponent = (b * params.rate_r + 1.0) * LN_2 - params.n as f64 * params.epsilon.powi(2) / (2.0 * b * b);
    1.0 - exponent.exp()
}

/// `1 − (2^{Br}+1)·exp(−nε²/(2B²))`, the constant the union-bound argument
/// actually produces for the i.i.d. case. Kept for auditing alongside the
/// stated `2^{Br+1}` form used by [`thm1_bound`].
pub fn thm1_prob_proof_form(params: &BoundParams) -> Result<f64> {
    params.validate()?;
    let b = params.b as f64;
    let log_count = ln_pow2_plus_one(b * params.rate_r);
    Ok(1.0 - (log_count - params.n as f64 * params.epsilon.powi(2) / (2.0 * b * b)).exp())
}

/// `ln(2^x + 1)` without overflow.
fn ln_pow2_plus_one(x: f64) -> f64 {
    x * LN_2 + (-x * LN_2).exp().ln_1p()
}

/// i.i.d. `{0,1}` masks with density `p`:
///
/// ```text
/// (1/nB)‖x − x̂‖² ≤ (1 + Bp/(1−p))·δ/(nB) + ρ²ε/(p − p²)
/// ```
pub fn thm1_bound(p: f64, params: &BoundParams) -> Result<BoundReport> {
    params.validate()?;
    let prob = prob_union_statement(params);
    if !check_density(p)? {
        return Ok(BoundReport::new(TheoremTag::Thm1, *params, f64::INFINITY, prob));
    }
    Ok(BoundReport::new(TheoremTag::Thm1, *params, iid_distortion(p, params), prob))
}

fn iid_distortion(p: f64, params: &BoundParams) -> f64 {
    let b = params.b as f64;
    (1.0 + b * p / (1.0 - p)) * params.delta / params.nb() + params.rho.powi(2) * params.epsilon / bernoulli_var(p)
}

/// Minimizer of the [`thm1_bound`] distortion over `p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pstar {
    pub p: f64,
    /// `δ = 0`: the minimizer sits exactly at 1/2.
    pub degenerate: bool,
}

/// Root in `(0, 1/2]` of `(δ/n)p² + 2ερ²p − ερ² = 0`.
///
/// Written as `ερ²/(ερ² + √(ε²ρ⁴ + ερ²δ/n))`, which is the quadratic-formula
/// root without the cancellation at small `δ/n`.
pub fn thm1_pstar(params: &BoundParams) -> Result<Pstar> {
    params.validate()?;
    let a = params.epsilon * params.rho.powi(2);
    let k = params.delta / params.n as f64;
    if a == 0.0 && k == 0.0 {
        return Err(invalid("p* is undefined when both delta and epsilon·rho² vanish"));
    }
    let p = a / (a + (a * a + k * a).sqrt());
    Ok(Pstar { p, degenerate: params.delta == 0.0 })
}

/// i.i.d. `{−1,+1}` masks with `P(+1) = p`.
pub fn cor1_bound(p: f64, params: &BoundParams) -> Result<BoundReport> {
    params.validate()?;
    let prob = prob_union_statement(params);
    if !check_density(p)? {
        return Ok(BoundReport::new(TheoremTag::Cor1, *params, f64::INFINITY, prob));
    }
    let b = params.b as f64;
    let v4 = 4.0 * bernoulli_var(p);
    let distortion = (v4 * (1.0 - b) + b) / v4 * params.delta / params.nb() + params.rho.powi(2) * params.epsilon / v4;
    Ok(BoundReport::new(TheoremTag::Cor1, *params, distortion, prob))
}

/// In-frame Markov masks: the i.i.d. distortion at the stationary density,
/// holding with probability `1 − (2^{Br}+1)·exp(−(nε²/32)(1−θ₁)²)`.
pub fn thm2_bound(spec: &MarkovMaskSpec, params: &BoundParams) -> Result<BoundReport> {
    params.validate()?;
    if spec.orientation() != Orientation::InFrame {
        return Err(invalid("the thm2 bound needs an in-frame chain"));
    }
    let p = spec.nondegenerate_p()?;
    let theta = theta1_closed(spec.q0(), spec.q1(), params.b)?;
    let b = params.b as f64;
    let exponent =
        ln_pow2_plus_one(b * params.rate_r) - params.n as f64 * params.epsilon.powi(2) / 32.0 * (1.0 - theta).powi(2);
    Ok(BoundReport::new(TheoremTag::Thm2, *params, iid_distortion(p, params), 1.0 - exponent.exp()))
}

/// Out-of-frame Markov masks with memory `α`, using the exact extreme
/// eigenvalues of `Λ = [α^{|i−k|}]`.
pub fn thm3_bound(p: f64, alpha: f64, params: &BoundParams) -> Result<BoundReport> {
    params.validate()?;
    let lambda = lambda_matrix(alpha, params.b)?;
    let (lmin, lmax) = lambda_extremes(&lambda)?;
    if lmin <= 0.0 {
        return Err(Error::Inapplicable(format!("lambda_min(Λ) = {lmin:e} is not positive")));
    }
    let prob = prob_union_statement(params);
    if !check_density(p)? {
        return Ok(BoundReport::new(TheoremTag::Thm3, *params, f64::INFINITY, prob));
    }
    let b = params.b as f64;
    let distortion = (lmax * (1.0 - p) + p * b) / (lmin * (1.0 - p)) * params.delta / params.nb()
        + params.rho.powi(2) * params.epsilon / (lmin * bernoulli_var(p));
    Ok(BoundReport::new(TheoremTag::Thm3, *params, distortion, prob))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cor2Mode {
    /// The literal closed form, with its `ρ²(1−ε)` term.
    PaperLiteral,
    /// Gershgorin eigenvalue bounds substituted into [`thm3_bound`].
    ProofDerived,
}

/// Eigenvalue-free version of [`thm3_bound`] for `0 ≤ α < 1/3`.
pub fn cor2_bound(p: f64, alpha: f64, params: &BoundParams, mode: Cor2Mode) -> Result<BoundReport> {
    params.validate()?;
    if !(alpha >= 0.0) {
        return Err(invalid(format!("alpha must be >= 0, got {alpha}")));
    }
    if alpha >= 1.0 / 3.0 {
        return Err(Error::Inapplicable(format!("Gershgorin lower bound needs alpha < 1/3, got {alpha}")));
    }
    let tag = match mode {
        Cor2Mode::PaperLiteral => TheoremTag::Cor2PaperLiteral,
        Cor2Mode::ProofDerived => TheoremTag::Cor2ProofDerived,
    };
    let prob = prob_union_statement(params);
    if !check_density(p)? {
        return Ok(BoundReport::new(tag, *params, f64::INFINITY, prob));
    }
    let b = params.b as f64;
    let shrink = 1.0 - 3.0 * alpha;
    let nb = params.nb();
    let rho2 = params.rho.powi(2);
    let distortion = match mode {
        Cor2Mode::PaperLiteral => {
            ((1.0 + alpha) * (1.0 - p) + p * b) / (shrink * (1.0 - p)) * params.delta / nb
                + rho2 * (1.0 - params.epsilon) / (shrink * bernoulli_var(p))
        }
        Cor2Mode::ProofDerived => {
            ((1.0 + alpha) * (1.0 - p) + p * b * (1.0 - alpha)) / (shrink * (1.0 - p)) * params.delta / nb
                + rho2 * params.epsilon * (1.0 - alpha) / (shrink * bernoulli_var(p))
        }
    };
    Ok(BoundReport::new(tag, *params, distortion, prob))
}
