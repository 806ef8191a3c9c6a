//! Closed-form recovery guarantees and the quantities they are built from.
//!
//! Every evaluator here is a pure function of its arguments.

mod bounds;
mod contraction;
mod moments;
mod spectrum;

pub use bounds::{
    cor1_bound, cor2_bound, thm1_bound, thm1_prob_proof_form, thm1_pstar, thm2_bound, thm3_bound, Cor2Mode, Pstar,
};
pub use contraction::{mn_factor, theta1_bruteforce, theta1_closed, Theta1Enumeration, MAX_ENUMERATION_FRAMES};
pub use moments::{expected_uj, hoeffding_tail, markov_concentration_tail, markov_lipschitz, uj_upper_bound, UjModel};
pub use spectrum::{
    gershgorin_bounds, lambda_extremes, lambda_matrix, symmetric_eigenvalues, CorrelationMatrix, JACOBI_MAX_SWEEPS,
    JACOBI_TOLERANCE,
};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Above this `ε` the union-bound step is outside the range the analysis
/// was written for; evaluators still run but flag it.
pub const EPSILON_ADVISORY_CEILING: f64 = 16.0 / 3.0;

/// Parameters shared by every distortion bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BoundParamsRepr", into = "BoundParamsRepr")]
pub struct BoundParams {
    /// Pixels per frame.
    pub n: usize,
    /// Frames per measurement.
    pub b: usize,
    pub rate_r: f64,
    /// Code distortion `δ` (total squared error, not normalized).
    pub delta: f64,
    pub rho: f64,
    pub epsilon: f64,
}

impl BoundParams {
    pub fn new(n: usize, b: usize, rate_r: f64, delta: f64, rho: f64, epsilon: f64) -> Result<Self> {
        let p = BoundParams { n, b, rate_r, delta, rho, epsilon };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.b == 0 {
            return Err(invalid("n and B must be positive"));
        }
        if !(self.rate_r.is_finite() && self.rate_r >= 0.0) {
            return Err(invalid(format!("rate r must be finite and >= 0, got {}", self.rate_r)));
        }
        if !(self.delta.is_finite() && self.delta >= 0.0) {
            return Err(invalid(format!("delta must be finite and >= 0, got {}", self.delta)));
        }
        if !(self.rho.is_finite() && self.rho > 0.0) {
            return Err(invalid(format!("rho must be positive, got {}", self.rho)));
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(invalid(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        Ok(())
    }

    /// Non-fatal warnings about the parameter set.
    pub fn advisories(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.epsilon >= EPSILON_ADVISORY_CEILING {
            out.push(format!("epsilon = {} is >= 16/3", self.epsilon));
        }
        out
    }

    pub(crate) fn nb(&self) -> f64 {
        self.n as f64 * self.b as f64
    }
}

#[derive(Serialize, Deserialize)]
struct BoundParamsRepr {
    n: usize,
    #[serde(rename = "B")]
    b: usize,
    r: f64,
    delta: f64,
    rho: f64,
    eps: f64,
}

impl TryFrom<BoundParamsRepr> for BoundParams {
    type Error = Error;

    fn try_from(r: BoundParamsRepr) -> Result<Self> {
        BoundParams::new(r.n, r.b, r.r, r.delta, r.rho, r.eps)
    }
}

impl From<BoundParams> for BoundParamsRepr {
    fn from(p: BoundParams) -> Self {
        BoundParamsRepr { n: p.n, b: p.b, r: p.rate_r, delta: p.delta, rho: p.rho, eps: p.epsilon }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremTag {
    Thm1,
    Cor1,
    Thm2,
    Thm3,
    Cor2PaperLiteral,
    Cor2ProofDerived,
}

impl TheoremTag {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremTag::Thm1 => "thm1",
            TheoremTag::Cor1 => "cor1",
            TheoremTag::Thm2 => "thm2",
            TheoremTag::Thm3 => "thm3",
            TheoremTag::Cor2PaperLiteral => "cor2_paper_literal",
            TheoremTag::Cor2ProofDerived => "cor2_proof_derived",
        }
    }
}

/// A distortion bound and the probability with which it holds.
///
/// `distortion_bound` bounds `(1/nB)‖x − x̂‖₂²`; it is `+∞` for degenerate
/// mask densities. `prob_lower_raw` is the union-bound expression as is and
/// may be negative.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub theorem: TheoremTag,
    pub params: BoundParams,
    pub distortion_bound: f64,
    pub prob_lower_raw: f64,
    pub prob_lower_clamped: f64,
}

impl BoundReport {
    pub(crate) fn new(theorem: TheoremTag, params: BoundParams, distortion_bound: f64, prob_lower_raw: f64) -> Self {
        BoundReport {
            theorem,
            params,
            distortion_bound,
            prob_lower_raw,
            prob_lower_clamped: prob_lower_raw.clamp(0.0, 1.0),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        !self.distortion_bound.is_finite()
    }

    pub fn is_vacuous(&self) -> bool {
        self.prob_lower_clamped <= 0.0
    }
}

/// `p(1 − p)`, used wherever a Bernoulli variance appears so that
/// algebraically equal expressions also agree bit for bit.
#[inline]
pub(crate) fn bernoulli_var(p: f64) -> f64 {
    p * (1.0 - p)
}
