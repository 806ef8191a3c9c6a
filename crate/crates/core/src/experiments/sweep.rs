use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::masks::{BernoulliMaskSpec, MarkovMaskSpec, MaskSpec, Orientation};
use crate::model::Alphabet;
use crate::theory::{lambda_extremes, lambda_matrix, theta1_closed, thm1_pstar, BoundParams, BoundReport};

use super::trial::{bound_for_mask, Experiment, TrialConfig, TrialResult};
use super::{argmin, binomial_slack};

/// What a sweep varies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    /// i.i.d. mask density `p`.
    Density,
    /// In-frame chain parameters; `param` is `α = 1 − q0 − q1`.
    InFrame,
    /// Out-of-frame chain parameters; `param` is `α`.
    OutOfFrame,
}

/// One grid point. Bound fields are `None` where no theorem applies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub param: f64,
    pub distortion_bound: Option<f64>,
    pub prob_lower_raw: Option<f64>,
    pub prob_lower_clamped: Option<f64>,
    pub mean_empirical: Option<f64>,
    pub satisfaction_rate: Option<f64>,
    /// `None` when the point is excluded from pass/fail accounting
    /// (vacuous guarantee, inapplicable theorem, or no trials).
    pub pass: Option<bool>,
    pub q0: Option<f64>,
    pub q1: Option<f64>,
    pub theta1: Option<f64>,
    pub lambda_min: Option<f64>,
    pub lambda_max: Option<f64>,
    pub note: Option<String>,
}

impl SweepPoint {
    fn new(param: f64, bound: Option<&BoundReport>) -> Self {
        SweepPoint {
            param,
            distortion_bound: bound.map(|b| b.distortion_bound),
            prob_lower_raw: bound.map(|b| b.prob_lower_raw),
            prob_lower_clamped: bound.map(|b| b.prob_lower_clamped),
            mean_empirical: None,
            satisfaction_rate: None,
            pass: None,
            q0: None,
            q1: None,
            theta1: None,
            lambda_min: None,
            lambda_max: None,
            note: None,
        }
    }

    fn attach_trials(&mut self, trials: &[TrialResult]) {
        let count = trials.len() as f64;
        self.mean_empirical = Some(trials.iter().map(|t| t.empirical_distortion).sum::<f64>() / count);
        if let Some(prob) = self.prob_lower_clamped {
            let rate = trials.iter().filter(|t| t.satisfied).count() as f64 / count;
            self.satisfaction_rate = Some(rate);
            if prob > 0.0 {
                self.pass = Some(rate >= prob - binomial_slack(prob, trials.len()));
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub argmin_bound: Option<f64>,
    pub argmin_empirical: Option<f64>,
    pub pstar_theory: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub kind: SweepKind,
    pub points: Vec<SweepPoint>,
    pub summary: SweepSummary,
}

impl SweepResult {
    fn assemble(kind: SweepKind, points: Vec<SweepPoint>, pstar_theory: Option<f64>) -> Self {
        let at = |k: Option<usize>| k.map(|k| points[k].param);
        let summary = SweepSummary {
            argmin_bound: at(argmin(points.iter().map(|p| p.distortion_bound))),
            argmin_empirical: at(argmin(points.iter().map(|p| p.mean_empirical))),
            pstar_theory,
        };
        SweepResult { kind, points, summary }
    }

    pub fn grid(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.param).collect()
    }

    pub fn bound_curve(&self) -> Vec<Option<f64>> {
        self.points.iter().map(|p| p.distortion_bound).collect()
    }

    pub fn has_empirical(&self) -> bool {
        self.points.iter().any(|p| p.mean_empirical.is_some())
    }

    /// Every point that takes part in pass/fail accounting passed.
    pub fn all_pass(&self) -> bool {
        self.points.iter().all(|p| p.pass != Some(false))
    }

    /// One row per grid point, empty cells where a value does not apply.
    pub fn to_csv(&self) -> String {
        let empirical = self.has_empirical();
        let mut header = String::from("param,distortion_bound,prob_lower_raw,prob_lower_clamped");
        if empirical {
            header.push_str(",mean_empirical,satisfaction_rate,pass");
        }
        match self.kind {
            SweepKind::Density => {}
            SweepKind::InFrame => header.push_str(",q0,q1,theta1"),
            SweepKind::OutOfFrame => header.push_str(",q0,q1,lambda_min,lambda_max"),
        }
        let mut out = header;
        out.push('\n');
        for p in &self.points {
            let mut cells =
                vec![p.param.to_string(), cell(p.distortion_bound), cell(p.prob_lower_raw), cell(p.prob_lower_clamped)];
            if empirical {
                cells.push(cell(p.mean_empirical));
                cells.push(cell(p.satisfaction_rate));
                cells.push(p.pass.map(|b| b.to_string()).unwrap_or_default());
            }
            match self.kind {
                SweepKind::Density => {}
                SweepKind::InFrame => cells.extend([cell(p.q0), cell(p.q1), cell(p.theta1)]),
                SweepKind::OutOfFrame => cells.extend([cell(p.q0), cell(p.q1), cell(p.lambda_min), cell(p.lambda_max)]),
            }
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn cell(v: Option<f64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn check_density_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(invalid("p grid is empty"));
    }
    if let Some(p) = grid.iter().find(|p| !(**p > 0.0 && **p < 1.0)) {
        return Err(invalid(format!("p grid values must lie in (0,1), got {p}")));
    }
    Ok(())
}

fn density_pstar(params: &BoundParams, alphabet: Alphabet) -> Result<f64> {
    match alphabet {
        Alphabet::Binary01 => Ok(thm1_pstar(params)?.p),
        Alphabet::SignedPm1 => Ok(0.5),
    }
}

/// Bound curve over mask densities without running trials.
pub fn sweep_p_theory(params: &BoundParams, alphabet: Alphabet, p_grid: &[f64]) -> Result<SweepResult> {
    params.validate()?;
    check_density_grid(p_grid)?;
    let points = p_grid
        .iter()
        .map(|&p| {
            let mask = MaskSpec::Iid(BernoulliMaskSpec::new(p, alphabet)?);
            Ok(SweepPoint::new(p, Some(&bound_for_mask(&mask, params)?)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult::assemble(SweepKind::Density, points, Some(density_pstar(params, alphabet)?)))
}

/// Bound and empirical curves over i.i.d. mask densities.
///
/// The mask alphabet is taken from `config.mask` when it is i.i.d., binary
/// otherwise. Trial `k` draws the same signal at every grid point.
pub fn sweep_p(config: &TrialConfig, p_grid: &[f64]) -> Result<SweepResult> {
    check_density_grid(p_grid)?;
    let base = Experiment::unbounded(config.clone())?;
    let alphabet = match config.mask {
        MaskSpec::Iid(s) => s.alphabet(),
        MaskSpec::Markov(_) => Alphabet::Binary01,
    };
    let mut points = Vec::with_capacity(p_grid.len());
    for &p in p_grid {
        let exp = base.with_mask(MaskSpec::Iid(BernoulliMaskSpec::new(p, alphabet)?))?;
        let mut point = SweepPoint::new(p, exp.bound());
        point.attach_trials(&exp.run_all()?);
        points.push(point);
    }
    Ok(SweepResult::assemble(SweepKind::Density, points, Some(density_pstar(&config.params, alphabet)?)))
}

/// `(q0, q1)` pairs for one chain orientation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarkovGrid {
    pub orientation: Orientation,
    pub pairs: Vec<(f64, f64)>,
}

impl MarkovGrid {
    /// Pairs with `q0 = q1 = (1 − α)/2` for each `α`.
    pub fn symmetric_alpha(orientation: Orientation, alphas: &[f64]) -> Self {
        MarkovGrid { orientation, pairs: alphas.iter().map(|a| ((1.0 - a) / 2.0, (1.0 - a) / 2.0)).collect() }
    }
}

fn is_skippable(e: &Error) -> bool {
    matches!(e, Error::Inapplicable(_) | Error::InvalidParameter(_))
}

fn markov_point(spec: &MarkovMaskSpec, params: &BoundParams) -> Result<SweepPoint> {
    let mask = MaskSpec::Markov(*spec);
    let (bound, note) = match bound_for_mask(&mask, params) {
        Ok(b) => (Some(b), None),
        Err(e) if is_skippable(&e) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let mut point = SweepPoint::new(spec.alpha(), bound.as_ref());
    point.note = note;
    point.q0 = Some(spec.q0());
    point.q1 = Some(spec.q1());
    match spec.orientation() {
        Orientation::InFrame => point.theta1 = Some(theta1_closed(spec.q0(), spec.q1(), params.b)?),
        Orientation::OutOfFrame => {
            if (0.0..1.0).contains(&spec.alpha()) {
                let (lo, hi) = lambda_extremes(&lambda_matrix(spec.alpha(), params.b)?)?;
                point.lambda_min = Some(lo);
                point.lambda_max = Some(hi);
            }
        }
    }
    Ok(point)
}

fn markov_specs(grid: &MarkovGrid) -> Result<Vec<MarkovMaskSpec>> {
    if grid.pairs.is_empty() {
        return Err(invalid("Markov grid is empty"));
    }
    grid.pairs.iter().map(|&(q0, q1)| MarkovMaskSpec::new(q0, q1, grid.orientation)).collect()
}

fn markov_kind(o: Orientation) -> SweepKind {
    match o {
        Orientation::InFrame => SweepKind::InFrame,
        Orientation::OutOfFrame => SweepKind::OutOfFrame,
    }
}

/// Markov bound curve over chain parameters without trials.
pub fn sweep_markov_theory(params: &BoundParams, grid: &MarkovGrid) -> Result<SweepResult> {
    params.validate()?;
    let points = markov_specs(grid)?.iter().map(|s| markov_point(s, params)).collect::<Result<Vec<_>>>()?;
    Ok(SweepResult::assemble(markov_kind(grid.orientation), points, None))
}

/// Bound and empirical curves over chain parameters.
///
/// In-frame points carry `θ₁`, out-of-frame points `(λ_min, λ_max)`. Points
/// where the theorem does not apply still get an empirical mean but no bound
/// and no pass/fail verdict.
pub fn sweep_markov(config: &TrialConfig, grid: &MarkovGrid) -> Result<SweepResult> {
    let base = Experiment::unbounded(config.clone())?;
    let mut points = Vec::with_capacity(grid.pairs.len());
    for spec in markov_specs(grid)? {
        let mut point = markov_point(&spec, &config.params)?;
        let mask = MaskSpec::Markov(spec);
        let exp = if point.distortion_bound.is_some() { base.with_mask(mask)? } else { base.with_mask_unbounded(mask) };
        point.attach_trials(&exp.run_all()?);
        points.push(point);
    }
    Ok(SweepResult::assemble(markov_kind(grid.orientation), points, None))
}
