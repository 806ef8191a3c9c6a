use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::masks::MaskSpec;
use crate::model::Alphabet;
use crate::theory::BoundParams;

#[derive(Debug, Parser)]
#[command(name = "scimask", version, about = "SCI mask theory and Monte Carlo toolkit")]
pub struct Cli {
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Omit the timestamp line from CSV outputs.
    #[arg(long, global = true)]
    pub deterministic: bool,

    /// Directory for output files; without it results go to stdout only.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Evaluate one distortion bound at a point.
    Bound(BoundArgs),
    /// Optimal i.i.d. mask density for the binary-mask bound.
    Pstar(ParamArgs),
    /// Contraction coefficient of the in-frame chain.
    Theta1(Theta1Args),
    /// Extreme eigenvalues of the cross-frame correlation matrix.
    Lambda(LambdaArgs),
    /// Bound (and optionally empirical) curve over mask density.
    SweepP(SweepPArgs),
    /// Bound and empirical curves over Markov chain parameters.
    SweepMarkov(SweepMarkovArgs),
    /// Run seeded CSP recovery trials.
    Trial(TrialArgs),
    /// Compare bound-satisfaction frequency against the guaranteed probability.
    Verify(TrialArgs),
    /// Empirical versus theoretical tails of the mean pixel energy.
    Concentration(ConcentrationArgs),
    /// theta1 against q1 for several (q0, B) pairs.
    Fig2(Fig2Args),
    /// Re-run a command from its config-echo.json.
    #[serde(skip)]
    Replay(ReplayArgs),
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct ParamArgs {
    /// Pixels per frame.
    #[arg(long)]
    pub n: usize,
    /// Frames per measurement.
    #[arg(long = "B")]
    #[serde(rename = "B")]
    pub b: usize,
    /// Code rate r (bits per frame).
    #[arg(long)]
    pub r: f64,
    /// Code distortion delta.
    #[arg(long)]
    pub delta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub rho: f64,
    #[arg(long)]
    pub eps: f64,
}

impl ParamArgs {
    pub fn to_params(&self) -> Result<BoundParams> {
        BoundParams::new(self.n, self.b, self.r, self.delta, self.rho, self.eps)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremArg {
    Thm1,
    Cor1,
    Thm2,
    Thm3,
    Cor2,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Cor2ModeArg {
    PaperLiteral,
    #[default]
    ProofDerived,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct BoundArgs {
    #[arg(long, value_enum)]
    pub theorem: TheoremArg,
    #[arg(long, value_enum, default_value_t = Cor2ModeArg::ProofDerived)]
    pub cor2_mode: Cor2ModeArg,
    /// Mask density (thm1, cor1, thm3, cor2).
    #[arg(long)]
    pub p: Option<f64>,
    /// Memory parameter (thm3, cor2).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Chain parameters (thm2).
    #[arg(long)]
    pub q0: Option<f64>,
    #[arg(long)]
    pub q1: Option<f64>,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct Theta1Args {
    #[arg(long)]
    pub q0: f64,
    #[arg(long)]
    pub q1: f64,
    #[arg(long = "B")]
    #[serde(rename = "B")]
    pub b: usize,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct LambdaArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long = "B")]
    #[serde(rename = "B")]
    pub b: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MaskModelArg {
    Iid,
    Signed,
    Inframe,
    Outframe,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct MaskArgs {
    #[arg(long = "mask", value_enum, default_value_t = MaskModelArg::Iid)]
    #[serde(rename = "model")]
    pub mask: MaskModelArg,
    /// Density of ones (iid, signed).
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub q0: Option<f64>,
    #[arg(long)]
    pub q1: Option<f64>,
}

impl MaskArgs {
    pub fn to_spec(&self) -> Result<MaskSpec> {
        let need =
            |v: Option<f64>, name: &str| v.ok_or_else(|| invalid(format!("--{name} is required for this mask model")));
        match self.mask {
            MaskModelArg::Iid => MaskSpec::iid(need(self.p, "p")?),
            MaskModelArg::Signed => MaskSpec::signed(need(self.p, "p")?),
            MaskModelArg::Inframe => MaskSpec::inframe(need(self.q0, "q0")?, need(self.q1, "q1")?),
            MaskModelArg::Outframe => MaskSpec::outframe(need(self.q0, "q0")?, need(self.q1, "q1")?),
        }
    }
}

/// Signal class and bound parameters for randomized commands. Rate and
/// distortion default to the values certified by the anchor codebook.
#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct ExperimentArgs {
    #[arg(long, default_value_t = 4096)]
    pub n: usize,
    #[arg(long = "B", default_value_t = 2)]
    #[serde(rename = "B")]
    pub b: usize,
    #[arg(long, default_value_t = 1.0)]
    pub rho: f64,
    #[arg(long, default_value_t = 0.2)]
    pub eps: f64,
    /// Override the codebook rate (must not be below it).
    #[arg(long)]
    pub r: Option<f64>,
    /// Override the certified distortion (must not be below it).
    #[arg(long)]
    pub delta: Option<f64>,
    /// Signal class JSON file; replaces the generated class.
    #[arg(long)]
    pub class: Option<PathBuf>,
    /// Number of generated anchors.
    #[arg(long, default_value_t = 64)]
    pub anchors: usize,
    /// Anchor entries are uniform in ±amplitude·rho/2.
    #[arg(long, default_value_t = 0.5)]
    pub amplitude: f64,
    /// l2 radius of the perturbation ball around each anchor.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    /// Master seed; required by every randomized command.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct TrialArgs {
    #[command(flatten)]
    pub mask: MaskArgs,
    #[command(flatten)]
    pub experiment: ExperimentArgs,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlphabetArg {
    #[default]
    Binary01,
    Signed,
}

impl From<AlphabetArg> for Alphabet {
    fn from(a: AlphabetArg) -> Self {
        match a {
            AlphabetArg::Binary01 => Alphabet::Binary01,
            AlphabetArg::Signed => Alphabet::SignedPm1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct SweepPArgs {
    /// `start:stop:step` or a comma-separated list.
    #[arg(long, default_value = "0.05:0.95:0.01")]
    pub grid: String,
    #[arg(long, value_enum, default_value_t = AlphabetArg::Binary01)]
    pub alphabet: AlphabetArg,
    /// Evaluate the bound only; needs --r and --delta.
    #[arg(long)]
    pub theory_only: bool,
    #[command(flatten)]
    pub experiment: ExperimentArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrientationArg {
    Inframe,
    Outframe,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct SweepMarkovArgs {
    #[arg(long, value_enum)]
    pub orientation: OrientationArg,
    /// `q0:q1` pairs separated by commas.
    #[arg(long, conflicts_with = "alpha_grid")]
    pub pairs: Option<String>,
    /// Memory values; each becomes `q0 = q1 = (1 − α)/2`.
    #[arg(long)]
    pub alpha_grid: Option<String>,
    #[arg(long)]
    pub theory_only: bool,
    #[command(flatten)]
    pub experiment: ExperimentArgs,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct ConcentrationArgs {
    #[command(flatten)]
    pub mask: MaskArgs,
    #[arg(long, default_value_t = 1024)]
    pub n: usize,
    #[arg(long = "B", default_value_t = 2)]
    #[serde(rename = "B")]
    pub b: usize,
    #[arg(long, default_value_t = 1.0)]
    pub rho: f64,
    /// Deviations of the mean to test.
    #[arg(long, default_value = "0.05:0.5:0.05")]
    pub t_grid: String,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct Fig2Args {
    #[arg(long, default_value = "0.2,0.5")]
    pub q0_list: String,
    #[arg(long = "B-list", default_value = "2,8")]
    #[serde(rename = "B_list")]
    pub b_list: String,
    #[arg(long, default_value = "0.01:0.99:0.01")]
    pub q1_grid: String,
}

#[derive(Clone, Debug, PartialEq, Args)]
pub struct ReplayArgs {
    /// A config-echo.json written by an earlier run.
    #[arg(long)]
    pub config: PathBuf,
}

/// `start:stop:step` (inclusive, values rounded to 12 decimals) or `a,b,c`.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let bad = || invalid(format!("cannot parse grid {s:?}"));
    let values = if s.contains(':') {
        let parts: Vec<f64> =
            s.split(':').map(|t| t.trim().parse::<f64>().map_err(|_| bad())).collect::<Result<_>>()?;
        let [start, stop, step] = parts[..] else { return Err(bad()) };
        if !(step > 0.0) || !(stop >= start) {
            return Err(invalid(format!("grid {s:?} needs step > 0 and stop >= start")));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        (0..count).map(|k| ((start + k as f64 * step) * 1e12).round() / 1e12).collect()
    } else {
        s.split(',').map(|t| t.trim().parse::<f64>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?
    };
    if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
        return Err(bad());
    }
    Ok(values)
}

pub fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| invalid(format!("cannot parse integer list {s:?}"))))
        .collect()
}

pub fn parse_pairs(s: &str) -> Result<Vec<(f64, f64)>> {
    s.split(',')
        .map(|pair| {
            let (a, b) = pair.split_once(':').ok_or_else(|| invalid(format!("expected q0:q1, got {pair:?}")))?;
            let parse = |t: &str| t.trim().parse::<f64>().map_err(|_| invalid(format!("cannot parse {t:?}")));
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}
