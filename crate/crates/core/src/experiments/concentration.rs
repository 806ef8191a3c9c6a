use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::masks::{MaskSpec, Orientation};
use crate::model::Alphabet;
use crate::rng::{self, domain};
use crate::theory::{
    expected_uj, hoeffding_tail, markov_concentration_tail, markov_lipschitz, theta1_closed, uj_upper_bound, UjModel,
};

use super::{binomial_slack, MIN_CONCENTRATION_SAMPLES};

/// Tail of `|(1/n)Σⱼ Uⱼ − E|` under one mask model.
///
/// The difference vectors `μ_{·j}` are drawn once, uniformly in `[−ρ, ρ]`,
/// from the master seed; each sample then draws a fresh mask cube.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationConfig {
    pub mask: MaskSpec,
    pub n: usize,
    #[serde(rename = "B")]
    pub b: usize,
    pub rho: f64,
    pub t_grid: Vec<f64>,
    pub num_samples: usize,
    pub master_seed: u64,
}

/// Which concentration inequality supplies the theoretical tail.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TailKind {
    /// Independent pixel columns, `Uⱼ ∈ [0, B²ρ²]`.
    Hoeffding,
    /// In-frame chains: Lipschitz constant `c`, contraction `θ₁`.
    Markov { lipschitz: f64, theta1: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationRow {
    pub t: f64,
    pub empirical_tail: f64,
    pub theoretical_tail: f64,
    pub slack: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationTable {
    pub tail: TailKind,
    /// Exact `E[(1/n)Σⱼ Uⱼ]`.
    pub mean: f64,
    pub num_samples: usize,
    pub rows: Vec<ConcentrationRow>,
}

impl ConcentrationTable {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,empirical_tail,theoretical_tail,slack,pass\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{},{}\n", r.t, r.empirical_tail, r.theoretical_tail, r.slack, r.pass));
        }
        out
    }
}

fn validate(cfg: &ConcentrationConfig) -> Result<()> {
    if cfg.n == 0 || cfg.b == 0 {
        return Err(invalid("n and B must be positive"));
    }
    if !(cfg.rho.is_finite() && cfg.rho > 0.0) {
        return Err(invalid(format!("rho must be positive, got {}", cfg.rho)));
    }
    if cfg.num_samples < MIN_CONCENTRATION_SAMPLES {
        return Err(invalid(format!(
            "concentration check needs at least {MIN_CONCENTRATION_SAMPLES} samples, got {}",
            cfg.num_samples
        )));
    }
    if cfg.t_grid.is_empty() || cfg.t_grid.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
        return Err(invalid("t grid must be nonempty with positive entries"));
    }
    Ok(())
}

/// Column `j` of a frame-major `B × n` array.
fn column(data: &[f64], b: usize, n: usize, j: usize) -> Vec<f64> {
    (0..b).map(|i| data[i * n + j]).collect()
}

fn exact_mean(cfg: &ConcentrationConfig, mu: &[f64]) -> Result<f64> {
    let p = cfg.mask.marginal_p();
    let (model, alpha) = match cfg.mask {
        MaskSpec::Iid(s) => match s.alphabet() {
            Alphabet::Binary01 => (UjModel::Iid01, None),
            Alphabet::SignedPm1 => (UjModel::SignedPm1, None),
        },
        // frames are independent, so each column is i.i.d. Bern(p)
        MaskSpec::Markov(m) if m.orientation() == Orientation::InFrame => (UjModel::Iid01, None),
        MaskSpec::Markov(m) => {
            if m.alpha() < 0.0 {
                return Err(Error::Inapplicable(format!("out-of-frame mean needs alpha >= 0, got {}", m.alpha())));
            }
            (UjModel::OutFrameMarkov, Some(m.alpha()))
        }
    };
    let total = (0..cfg.n).map(|j| expected_uj(model, p, alpha, &column(mu, cfg.b, cfg.n, j))).sum::<Result<f64>>()?;
    Ok(total / cfg.n as f64)
}

fn tail_kind(cfg: &ConcentrationConfig) -> Result<TailKind> {
    match cfg.mask {
        MaskSpec::Markov(m) if m.orientation() == Orientation::InFrame => {
            let theta1 = theta1_closed(m.q0(), m.q1(), cfg.b)?;
            if theta1 >= 1.0 {
                return Err(Error::Inapplicable("theta1 = 1 gives no concentration".into()));
            }
            Ok(TailKind::Markov { lipschitz: markov_lipschitz(cfg.b, cfg.rho), theta1 })
        }
        _ => Ok(TailKind::Hoeffding),
    }
}

/// Two-sided tail bound for a deviation `t` of the mean.
fn theoretical_tail(kind: TailKind, cfg: &ConcentrationConfig, t: f64) -> Result<f64> {
    match kind {
        TailKind::Hoeffding => {
            let scale = cfg.b as f64 * cfg.rho * cfg.rho;
            Ok(2.0 * hoeffding_tail(cfg.n, cfg.b, t / scale)?)
        }
        TailKind::Markov { lipschitz, theta1 } => markov_concentration_tail(cfg.n, lipschitz, theta1, cfg.n as f64 * t),
    }
}

/// Empirical tail frequencies of `(1/n)Σⱼ Uⱼ` around its exact mean versus
/// the matching inequality, with three binomial standard errors of slack.
pub fn concentration_check(cfg: &ConcentrationConfig) -> Result<ConcentrationTable> {
    validate(cfg)?;
    let (b, n) = (cfg.b, cfg.n);
    let mut mu_rng = rng::substream(cfg.master_seed, domain::CONCENTRATION_MU, 0);
    let mu: Vec<f64> = (0..b * n).map(|_| mu_rng.random_range(-cfg.rho..=cfg.rho)).collect();
    let mean = exact_mean(cfg, &mu)?;
    let kind = tail_kind(cfg)?;

    let deviations = (0..cfg.num_samples)
        .into_par_iter()
        .map(|s| {
            let seed = rng::substream_seed(cfg.master_seed, domain::CONCENTRATION, s as u64);
            let masks = cfg.mask.generate(b, n, seed)?;
            let d = masks.as_slice();
            let mut total = 0.0;
            for j in 0..n {
                let proj: f64 = (0..b).map(|i| f64::from(d[i * n + j]) * mu[i * n + j]).sum();
                total += proj * proj;
            }
            Ok((total / n as f64 - mean).abs())
        })
        .collect::<Result<Vec<f64>>>()?;

    let count = deviations.len();
    let rows = cfg
        .t_grid
        .iter()
        .map(|&t| {
            let hits = deviations.iter().filter(|&&d| d >= t).count();
            let empirical_tail = hits as f64 / count as f64;
            let theoretical_tail = theoretical_tail(kind, cfg, t)?;
            let slack = binomial_slack(theoretical_tail.min(1.0), count);
            Ok(ConcentrationRow {
                t,
                empirical_tail,
                theoretical_tail,
                slack,
                pass: empirical_tail <= theoretical_tail + slack,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConcentrationTable { tail: kind, mean, num_samples: count, rows })
}

/// `B²ρ²`: no deviation of the mean can reach this.
pub fn deviation_ceiling(b: usize, rho: f64) -> f64 {
    uj_upper_bound(b, rho)
}
