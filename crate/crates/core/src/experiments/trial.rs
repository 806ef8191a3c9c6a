use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codebook::{build_anchor_codebook, compress, csp_decode, Codebook, SignalClass};
use crate::error::{invalid, shape, Result};
use crate::masks::{MaskSpec, Orientation};
use crate::model::{encode, normalized_distortion, Alphabet, NoiseSpec};
use crate::rng::{self, domain};
use crate::theory::{cor1_bound, thm1_bound, thm2_bound, thm3_bound, BoundParams, BoundReport};

use super::{binomial_slack, MIN_VERIFY_TRIALS};

/// One Monte Carlo experiment: bound parameters, mask model, signal class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub params: BoundParams,
    pub mask: MaskSpec,
    pub class: SignalClass,
    pub num_trials: usize,
    pub master_seed: u64,
}

impl TrialConfig {
    /// Reads `n`, `B`, `ρ`, the rate and `δ` off the anchor codebook of `class`.
    pub fn from_class(
        class: SignalClass,
        mask: MaskSpec,
        epsilon: f64,
        num_trials: usize,
        master_seed: u64,
    ) -> Result<Self> {
        let cb = build_anchor_codebook(&class)?;
        let params =
            BoundParams::new(cb.frame_len(), cb.num_frames(), cb.rate(), cb.certified_delta(), cb.rho(), epsilon)?;
        Ok(TrialConfig { params, mask, class, num_trials, master_seed })
    }
}

/// Outcome of one recovery run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub trial_index: usize,
    pub substream_seed: u64,
    /// `(1/nB)‖x − x̂‖₂²`.
    pub empirical_distortion: f64,
    pub bound_value: f64,
    pub satisfied: bool,
    /// `‖y − Σᵢ Dᵢx̂ᵢ‖₂²` at the CSP solution.
    pub csp_objective: f64,
    /// `‖y − Σᵢ Dᵢx̃ᵢ‖₂²` where `x̃` is the codeword nearest to `x`.
    pub compressed_objective: f64,
    pub decoded_index: usize,
    pub compressed_index: usize,
}

/// The bound matching a mask model: i.i.d. binary, i.i.d. signed, in-frame
/// or out-of-frame Markov.
pub fn bound_for_mask(mask: &MaskSpec, params: &BoundParams) -> Result<BoundReport> {
    match mask {
        MaskSpec::Iid(s) => match s.alphabet() {
            Alphabet::Binary01 => thm1_bound(s.p(), params),
            Alphabet::SignedPm1 => cor1_bound(s.p(), params),
        },
        MaskSpec::Markov(m) => match m.orientation() {
            Orientation::InFrame => thm2_bound(m, params),
            Orientation::OutOfFrame => {
                m.check_nonnegative_memory()?;
                thm3_bound(m.nondegenerate_p()?, m.alpha(), params)
            }
        },
    }
}

/// A validated [`TrialConfig`] with its codebook and bound precomputed.
#[derive(Clone, Debug)]
pub struct Experiment {
    config: TrialConfig,
    codebook: Codebook,
    bound: Option<BoundReport>,
}

impl Experiment {
    pub fn prepare(config: TrialConfig) -> Result<Self> {
        let exp = Self::unbounded(config)?;
        let bound = bound_for_mask(&exp.config.mask, &exp.config.params)?;
        Ok(Experiment { bound: Some(bound), ..exp })
    }

    /// Validated config whose trials report a NaN bound; used for sweep
    /// points where no theorem applies but the empirical curve is wanted.
    pub(crate) fn unbounded(config: TrialConfig) -> Result<Self> {
        let p = &config.params;
        p.validate()?;
        let codebook = build_anchor_codebook(&config.class)?;
        if codebook.num_frames() != p.b || codebook.frame_len() != p.n {
            return Err(shape(format!(
                "signal class is B={}, n={} but parameters say B={}, n={}",
                codebook.num_frames(),
                codebook.frame_len(),
                p.b,
                p.n
            )));
        }
        if codebook.rho() > p.rho {
            return Err(invalid(format!("signal class rho {} exceeds bound rho {}", codebook.rho(), p.rho)));
        }
        if (codebook.len() as f64).log2() > p.b as f64 * p.rate_r + 1e-12 {
            return Err(invalid(format!("{} codewords exceed 2^(B·r) = 2^{}", codebook.len(), p.b as f64 * p.rate_r)));
        }
        if codebook.certified_delta() > p.delta {
            return Err(invalid(format!(
                "bound delta {} is below the certified code distortion {}",
                p.delta,
                codebook.certified_delta()
            )));
        }
        if config.num_trials == 0 {
            return Err(invalid("num_trials must be positive"));
        }
        Ok(Experiment { config, codebook, bound: None })
    }

    pub fn config(&self) -> &TrialConfig {
        &self.config
    }

    pub fn codebook(&self) -> &Codebook {
        &self.codebook
    }

    pub fn bound(&self) -> Option<&BoundReport> {
        self.bound.as_ref()
    }

    pub(crate) fn with_mask(&self, mask: MaskSpec) -> Result<Self> {
        let config = TrialConfig { mask, ..self.config.clone() };
        let bound = bound_for_mask(&mask, &config.params)?;
        Ok(Experiment { config, codebook: self.codebook.clone(), bound: Some(bound) })
    }

    pub(crate) fn with_mask_unbounded(&self, mask: MaskSpec) -> Self {
        let config = TrialConfig { mask, ..self.config.clone() };
        Experiment { config, codebook: self.codebook.clone(), bound: None }
    }

    /// Signal and mask seeds of a trial depend only on the master seed and
    /// the index, so sweeps share signals across grid points.
    pub fn run_trial(&self, trial_index: usize) -> Result<TrialResult> {
        let seed = rng::substream_seed(self.config.master_seed, domain::TRIAL, trial_index as u64);
        let mut signal_rng = rng::substream(seed, domain::TRIAL_SIGNAL, 0);
        let x = self.config.class.sample(&mut signal_rng);
        let mask_seed = rng::substream_seed(seed, domain::TRIAL_MASK, 0);
        let masks = self.config.mask.generate(self.config.params.b, self.config.params.n, mask_seed)?;
        let y = encode(&x, &masks, NoiseSpec::NONE, seed)?;
        let solution = csp_decode(&y, &masks, &self.codebook)?;
        let (compressed_index, xtilde) = compress(&self.codebook, &x)?;
        let compressed_objective = masks.residual_energy(&y.y, xtilde.as_slice())?;
        let empirical_distortion = normalized_distortion(&x, &solution.xhat)?;
        let bound_value = self.bound.as_ref().map_or(f64::NAN, |b| b.distortion_bound);
        Ok(TrialResult {
            trial_index,
            substream_seed: seed,
            empirical_distortion,
            bound_value,
            satisfied: empirical_distortion <= bound_value,
            csp_objective: solution.objective,
            compressed_objective,
            decoded_index: solution.index,
            compressed_index,
        })
    }

    /// All `num_trials` trials, in index order.
    pub fn run_all(&self) -> Result<Vec<TrialResult>> {
        (0..self.config.num_trials).into_par_iter().map(|k| self.run_trial(k)).collect()
    }
}

pub fn run_trial(config: &TrialConfig, trial_index: usize) -> Result<TrialResult> {
    Experiment::prepare(config.clone())?.run_trial(trial_index)
}

pub fn run_trials(config: &TrialConfig) -> Result<Vec<TrialResult>> {
    Experiment::prepare(config.clone())?.run_all()
}

/// Bound-satisfaction frequency against the guaranteed probability.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub bound: BoundReport,
    pub num_trials: usize,
    pub num_satisfied: usize,
    pub satisfaction_rate: f64,
    pub prob_lower_clamped: f64,
    /// Three binomial standard errors at `prob_lower_clamped`.
    pub slack: f64,
    /// The guarantee is 0, so the check passes trivially.
    pub vacuous: bool,
    pub pass: bool,
}

/// Runs all trials and checks `rate ≥ prob − 3·√(prob(1−prob)/N)`.
pub fn verify_bound_probability(config: &TrialConfig) -> Result<(VerifyReport, Vec<TrialResult>)> {
    if config.num_trials < MIN_VERIFY_TRIALS {
        return Err(invalid(format!(
            "verification needs at least {MIN_VERIFY_TRIALS} trials, got {}",
            config.num_trials
        )));
    }
    let exp = Experiment::prepare(config.clone())?;
    let trials = exp.run_all()?;
    let num_satisfied = trials.iter().filter(|t| t.satisfied).count();
    let rate = num_satisfied as f64 / trials.len() as f64;
    let bound = exp.bound.clone().expect("prepared experiments carry a bound");
    let prob = bound.prob_lower_clamped;
    let slack = binomial_slack(prob, trials.len());
    let vacuous = bound.is_vacuous();
    let report = VerifyReport {
        bound,
        num_trials: trials.len(),
        num_satisfied,
        satisfaction_rate: rate,
        prob_lower_clamped: prob,
        slack,
        vacuous,
        pass: vacuous || rate >= prob - slack,
    };
    Ok((report, trials))
}

/// Header of [`trials_csv`].
pub const TRIALS_CSV_HEADER: &str = "trial,seed,empirical_distortion,bound,satisfied,objective";

/// One row per trial, in the order given.
pub fn trials_csv(trials: &[TrialResult]) -> String {
    let mut out = String::from(TRIALS_CSV_HEADER);
    out.push('\n');
    for t in trials {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            t.trial_index, t.substream_seed, t.empirical_distortion, t.bound_value, t.satisfied, t.csp_objective
        ));
    }
    out
}
