//! Seeded Monte Carlo harness: draw signals and masks, recover with CSP and
//! compare the empirical distortion against the matching bound.
//!
//! Every trial is a pure function of `(config, trial_index)`. Trials run in
//! parallel and are gathered by index, so results do not depend on the
//! number of worker threads.

mod concentration;
mod sweep;
mod trial;

pub use concentration::{
    concentration_check, deviation_ceiling, ConcentrationConfig, ConcentrationRow, ConcentrationTable, TailKind,
};
pub use sweep::{
    sweep_markov, sweep_markov_theory, sweep_p, sweep_p_theory, MarkovGrid, SweepKind, SweepPoint, SweepResult,
    SweepSummary,
};
pub use trial::{
    bound_for_mask, run_trial, run_trials, trials_csv, verify_bound_probability, Experiment, TrialConfig, TrialResult,
    VerifyReport, TRIALS_CSV_HEADER,
};

/// Minimum trial count for [`verify_bound_probability`].
pub const MIN_VERIFY_TRIALS: usize = 100;
/// Minimum sample count for [`concentration_check`].
pub const MIN_CONCENTRATION_SAMPLES: usize = 10_000;

/// Three binomial standard errors for a success probability `prob` over `count` draws.
pub fn binomial_slack(prob: f64, count: usize) -> f64 {
    3.0 * (prob * (1.0 - prob) / count as f64).sqrt()
}

/// Index of the smallest value, lowest index on ties; `None` if nothing is finite.
pub(crate) fn argmin(values: impl IntoIterator<Item = Option<f64>>) -> Option<usize> {
    let mut best: Option<(f64, usize)> = None;
    for (k, v) in values.into_iter().enumerate() {
        if let Some(v) = v.filter(|v| !v.is_nan()) {
            if best.is_none_or(|(b, _)| v < b) {
                best = Some((v, k));
            }
        }
    }
    best.map(|(_, k)| k)
}
