//! Command-line front end.
//!
//! Every subcommand validates its flags before computing, prints a JSON
//! summary to stdout and, with `--out DIR`, writes its files plus a
//! `config-echo.json` that `scimask replay --config` can re-run.
//!
//! Exit codes: 0 success, 1 I/O or numerical failure, 2 invalid
//! configuration, 3 theorem not applicable, 64 unknown subcommand.

mod args;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;
use serde_json::{json, Value};

use crate::codebook::SignalClass;
use crate::error::{invalid, Error, Result};
use crate::experiments::{
    concentration_check, sweep_markov, sweep_markov_theory, sweep_p, sweep_p_theory, trials_csv,
    verify_bound_probability, ConcentrationConfig, Experiment, MarkovGrid, SweepResult, TrialConfig,
};
use crate::masks::{MarkovMaskSpec, Orientation};
use crate::rng::{self, domain};
use crate::theory::{
    cor1_bound, cor2_bound, gershgorin_bounds, lambda_extremes, lambda_matrix, theta1_bruteforce, theta1_closed,
    thm1_bound, thm1_prob_proof_form, thm1_pstar, thm2_bound, thm3_bound, BoundParams, Cor2Mode,
    MAX_ENUMERATION_FRAMES,
};

pub use args::{
    parse_grid, parse_pairs, parse_usize_list, AlphabetArg, BoundArgs, Cli, Command, ConcentrationArgs, Cor2ModeArg,
    ExperimentArgs, Fig2Args, LambdaArgs, MaskArgs, MaskModelArg, OrientationArg, ParamArgs, ReplayArgs,
    SweepMarkovArgs, SweepPArgs, TheoremArg, Theta1Args, TrialArgs,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INAPPLICABLE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

/// Header of the Fig. 2 data file.
pub const FIG2_CSV_HEADER: &str = "q0,B,q1,theta1";

/// Parses `args` (program name first) and runs, writing to the process stdout/stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout(), &mut std::io::stderr())
}

/// Like [`run`] with explicit output streams.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                ErrorKind::InvalidSubcommand
                | ErrorKind::MissingSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => EXIT_USAGE,
                _ => EXIT_INVALID,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(stdout, "{text}") } else { write!(stderr, "{text}") };
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter(_) | Error::Shape(_) | Error::EmptyCodebook | Error::Json(_) => EXIT_INVALID,
        Error::Inapplicable(_) => EXIT_INAPPLICABLE,
        Error::Io(_) | Error::NonConvergence { .. } => EXIT_FAILURE,
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    let command = match &cli.command {
        Command::Replay(r) => serde_json::from_str::<Command>(&fs::read_to_string(&r.config)?)?,
        other => other.clone(),
    };
    let out = Output { dir: cli.out.clone(), deterministic: cli.deterministic };
    match cli.threads {
        Some(0) => Err(invalid("--threads must be positive")),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| invalid(format!("cannot build thread pool: {e}")))?;
            let mut buffer = Vec::new();
            let result = pool.install(|| dispatch(&command, &out, &mut buffer));
            stdout.write_all(&buffer)?;
            result
        }
        None => dispatch(&command, &out, stdout),
    }
}

struct Output {
    dir: Option<PathBuf>,
    deterministic: bool,
}

impl Output {
    fn prepare(&self, command: &Command) -> Result<()> {
        if let Some(dir) = &self.dir {
            fs::create_dir_all(dir)?;
            write_file(dir, "config-echo.json", &pretty(command)?)?;
        }
        Ok(())
    }

    fn json(&self, name: &str, value: &impl Serialize) -> Result<()> {
        if let Some(dir) = &self.dir {
            write_file(dir, name, &pretty(value)?)?;
        }
        Ok(())
    }

    /// CSV files carry a leading timestamp comment unless `--deterministic`.
    fn csv(&self, name: &str, body: &str, stdout: &mut dyn Write) -> Result<()> {
        match &self.dir {
            Some(dir) => {
                let mut text = String::new();
                if !self.deterministic {
                    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
                    text.push_str(&format!("# generated_unix_seconds={secs}\n"));
                }
                text.push_str(body);
                write_file(dir, name, &text)
            }
            None => Ok(stdout.write_all(body.as_bytes())?),
        }
    }
}

fn write_file(dir: &Path, name: &str, text: &str) -> Result<()> {
    Ok(fs::write(dir.join(name), text)?)
}

fn pretty(value: &impl Serialize) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn print_json(stdout: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    Ok(stdout.write_all(pretty(value)?.as_bytes())?)
}

fn dispatch(command: &Command, out: &Output, stdout: &mut dyn Write) -> Result<()> {
    validate(command)?;
    out.prepare(command)?;
    match command {
        Command::Bound(a) => cmd_bound(a, out, stdout),
        Command::Pstar(a) => cmd_pstar(a, out, stdout),
        Command::Theta1(a) => cmd_theta1(a, out, stdout),
        Command::Lambda(a) => cmd_lambda(a, out, stdout),
        Command::SweepP(a) => cmd_sweep_p(a, out, stdout),
        Command::SweepMarkov(a) => cmd_sweep_markov(a, out, stdout),
        Command::Trial(a) => cmd_trial(a, out, stdout),
        Command::Verify(a) => cmd_verify(a, out, stdout),
        Command::Concentration(a) => cmd_concentration(a, out, stdout),
        Command::Fig2(a) => cmd_fig2(a, out, stdout),
        Command::Replay(_) => Err(invalid("a replayed config cannot itself be a replay")),
    }
}

/// Range checks that need no computation, run before any output is written.
fn validate(command: &Command) -> Result<()> {
    let need_seed = |seed: Option<u64>| seed.map(|_| ()).ok_or_else(|| invalid("randomized commands need --seed"));
    match command {
        Command::Bound(a) => a.params.to_params().map(|_| ()),
        Command::Pstar(a) => a.to_params().map(|_| ()),
        Command::Theta1(a) => check_q(a.q0, a.q1).and(check_positive(a.b, "B")),
        Command::Lambda(a) => check_alpha(a.alpha).and(check_positive(a.b, "B")),
        Command::SweepP(a) => {
            parse_grid(&a.grid)?;
            if a.theory_only {
                theory_params(&a.experiment).map(|_| ())
            } else {
                need_seed(a.experiment.seed)
            }
        }
        Command::SweepMarkov(a) => {
            markov_grid(a)?;
            if a.theory_only {
                theory_params(&a.experiment).map(|_| ())
            } else {
                need_seed(a.experiment.seed)
            }
        }
        Command::Trial(a) | Command::Verify(a) => {
            a.mask.to_spec()?;
            need_seed(a.experiment.seed)
        }
        Command::Concentration(a) => {
            a.mask.to_spec()?;
            parse_grid(&a.t_grid)?;
            need_seed(a.seed)
        }
        Command::Fig2(a) => {
            parse_grid(&a.q0_list)?.into_iter().try_for_each(|q| check_q(q, 0.0))?;
            parse_grid(&a.q1_grid)?.into_iter().try_for_each(|q| check_q(0.0, q))?;
            parse_usize_list(&a.b_list)?.into_iter().try_for_each(|b| check_positive(b, "B"))
        }
        Command::Replay(_) => Ok(()),
    }
}

fn check_q(q0: f64, q1: f64) -> Result<()> {
    if (0.0..=1.0).contains(&q0) && (0.0..=1.0).contains(&q1) {
        Ok(())
    } else {
        Err(invalid(format!("q0, q1 must lie in [0,1], got {q0}, {q1}")))
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(invalid(format!("alpha must lie in [0,1), got {alpha}")))
    }
}

fn check_positive(v: usize, name: &str) -> Result<()> {
    if v > 0 {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be positive")))
    }
}

fn require(v: Option<f64>, flag: &str) -> Result<f64> {
    v.ok_or_else(|| invalid(format!("--{flag} is required")))
}

fn bound_json(report: &crate::theory::BoundReport, extra: Value) -> Result<Value> {
    let mut v = serde_json::to_value(report)?;
    let obj = v.as_object_mut().expect("bound report is an object");
    if report.is_degenerate() {
        obj.insert("degenerate".into(), Value::Bool(true));
    }
    let advisories = report.params.advisories();
    if !advisories.is_empty() {
        obj.insert("advisories".into(), json!(advisories));
    }
    if let Value::Object(extra) = extra {
        obj.extend(extra);
    }
    Ok(v)
}

fn cmd_bound(a: &BoundArgs, out: &Output, stdout: &mut dyn Write) -> Result<()> {
    let params = a.params.to_params()?;
    let mut extra = json!({});
    let report = match a.theorem {
        TheoremArg::Thm1 => {
            extra = json!({ "prob_lower_proof_form": thm1_prob_proof_form(&params)? });
            thm1_bound(require(a.p, "p")?, &params)?
        }
        TheoremArg::Cor1 => cor1_bound(require(a.p, "p")?, &params)?,
        TheoremArg::Thm2 => {
            let spec = MarkovMaskSpec::new(require(a.q0, "q0")?, require(a.q1, "q1")?, Orientation::InFrame)?;
            extra = json!({ "theta1": theta1_closed(spec.q0(), spec.q1(), params.b)?, "stationary_p": spec.stationary_p() });
            thm2_bound(&spec, &params)?
        }
        TheoremArg::Thm3 => thm3_bound(require(a.p, "p")?, require(a.alpha, "alpha")?, &params)?,
        TheoremArg::Cor2 => {
            let mode = match a.cor2_mode {
                Cor2ModeArg::PaperLiteral => Cor2Mode::PaperLiteral,
                Cor2ModeArg::ProofDerived => Cor2Mode::ProofDerived,
            };
            cor2_bound(require(a.p, "p")?, require(a.alpha, "alpha")?, &params, mode)?
        }
    };
    let v = bound_json(&report, extra)?;
    out.json("report.json", &v)?;
    print_json(stdout, &v)
}

fn cmd_pstar(a: &ParamArgs, out: &Output, stdout: &mut dyn Write) -> Result<()> {
    let params = a.to_params()?;
    let ps = thm1_pstar(&params)?;
    let mut v = json!({ "pstar": ps.p, "degenerate": ps.degenerate, "params": params });
    if ps.degenerate {
        v["note"] = json!("degenerate: δ=0");
    }
    out.json("report.json", &v)?;
    print_json(stdout, &v)
}

fn cmd_theta1(a: &Theta1Args, out: &Output, stdout: &mut dyn Write) -> Result<()> {
    let mut v = json!({ "q0": a.q0, "q1": a.q1, "B": a.b, "theta1": theta1_closed(a.q0, a.q1, a.b)? });
    if a.b <= MAX_ENUMERATION_FRAMES {
        let e = theta1_bruteforce(a.q0, a.q1, a.b)?;
        v["tv_at_extremes"] = json!(e.tv_at_extremes);
        v["sup_over_all_pairs"] = json!(e.sup_over_all_pairs);
    }
    out.json("report.json", &v)?;
    print_json(stdout, &v)
}

fn cmd_lambda(a: &LambdaArgs, out: &Output, stdout: &mut dyn Write) -> Result<()> {
    let (lo, hi) = lambda_extremes(&lambda_matrix(a.alpha, a.b)?)?;
    let (glo, ghi) = gershgorin_bounds(a.alpha)?;
    let v = json!({
        "alpha": a.alpha, "B": a.b,
        "lambda_min": lo, "lambda_max": hi,
        "gershgorin_low": glo, "gershgorin_high": ghi,
    });
    out.json("report.json", &v)?;
    print_json(stdout, &v)
}

fn theory_params(e: &ExperimentArgs) -> Result<BoundParams> {
    BoundParams::new(e.n, e.b, require(e.r, "r")?, require(e.delta, "delta")?, e.rho, e.eps)
}

fn signal_class(e: &ExperimentArgs) -> Result<SignalClass> {
    match &e.class {
        Some(path) => Ok(serde_json::from_str(&fs::read_to_string(path)?)?),
        None => {
            let seed = e.seed.ok_or_else(|| invalid("randomized commands need --seed"))?;
            let class_seed = rng::substream_seed(seed, domain::CLASS, 0);
            SignalClass::random(e.b, e.n, e.rho, e.anchors, e.amplitude, e.radius, class_seed)
        }
    }
}

fn trial_config(e: &ExperimentArgs, mask: crate::masks::MaskSpec) -> Result<TrialConfig> {
    let seed = e.seed.ok_or_else(|| invalid("randomized commands need --seed"))?;
    let mut cfg = TrialConfig::from_class(signal_class(e)?, mask, e.eps, e.trials, seed)?;
    if let Some(r) = e.r {
        cfg.params.rate_r = r;
    }
    if let Some(d) = e.delta {
        cfg.params.delta = d;
    }
    cfg.params.rho = e.rho;
    cfg.params.validate()?;
    Ok(cfg)
}

fn emit_sweep(result: &SweepResult, out: &Output, stdout: &mut dyn Write) -> Result<()> {
    out.csv("sweep.csv", &result.to_csv(), stdout)?;
    out.json("report.json", &result.summary)?;
    if out.dir.is_some() {
        print_json(stdout, &result.summary)?;
    }
    Ok(())
}

fn cmd_sweep_p(a: &SweepPArgs, out: &Output, stdout: &mut dyn Write) -> Result<()> {
    let grid = parse_grid(&a.grid)?;
    let result = if a.theory_only {
        sweep_p_theory(&theory_params(&a.experiment)?, a.alphabet.into(), &grid)?
    } else {
        let p0 = grid[grid.len() / 2];
        let mask = match a.alphabet {
            AlphabetArg::Binary01 => crate::masks::MaskSpec::iid(p0)?,
            AlphabetArg::Signed => crate::masks::MaskSpec::signed(p0)?,
        };
        sweep_p(&trial_config(&a.experiment, mask)?, &grid)?
    };
    emit_sweep(&result, out, stdout)
}

fn markov_grid(a: &SweepMarkovArgs) -> Result<MarkovGrid> {
    let orientation = match a.orientation {
        OrientationArg::Inframe => Orientation::InFrame,
        OrientationArg::Outframe => Orientation::OutOfFrame,
    };
    match (&a.pairs, &a.alpha_grid) {
        (Some(p), _) => Ok(MarkovGrid { orientation, pairs: parse_pairs(p)? }),
        (None, Some(g)) => Ok(MarkovGrid::symmetric_alpha(orientation, &parse_grid(g)?)),
        (None, None) => Err(invalid("sweep-markov needs --pairs or --alpha-grid")),
    }
}

fn cmd_sweep_markov(a: &SweepMarkovArgs, out: &Output, stdout: &mut dyn Write) -> Result<()> {
    let grid = markov_grid(a)?;
    let result = if a.theory_only {
        sweep_markov_theory(&theory_params(&a.experiment)?, &grid)?
    } else {
        let (q0, q1) = grid.pairs[0];
        let mask = crate::masks::MaskSpec::Markov(MarkovMaskSpec::new(q0, q1, grid.orientation)?);
        sweep_markov(&trial_config(&a.experiment, mask)?, &grid)?
    };
    emit_sweep(&result, out, stdout)
}

fn cmd_trial(a: &TrialArgs, out: &Output, stdout: &mut dyn Write) -> Result<()> {
    let cfg = trial_config(&a.experiment, a.mask.to_spec()?)?;
    let exp = Experiment::prepare(cfg)?;
    let trials = exp.run_all()?;
    let bound = exp.bound().expect("prepared experiments carry a bound");
    let count = trials.len() as f64;
    let v = json!({
        "bound": bound_json(bound, json!({}))?,
        "num_trials": trials.len(),
        "codebook_size": exp.codebook().len(),
        "mean_empirical_distortion": trials.iter().map(|t| t.empirical_distortion).sum::<f64>() / count,
        "max_empirical_distortion": trials.iter().map(|t| t.empirical_distortion).fold(0.0, f64::max),
        "satisfaction_rate": trials.iter().filter(|t| t.satisfied).count() as f64 / count,
        "proof_chain_holds": trials.iter().all(|t| t.csp_objective <= t.compressed_objective),
    });
    out.csv("trials.csv", &trials_csv(&trials), &mut std::io::sink())?;
    out.json("report.json", &v)?;
    print_json(stdout, &v)
}

fn cmd_verify(a: &TrialArgs, out: &Output, stdout: &mut dyn Write) -> Result<()> {
    let cfg = trial_config(&a.experiment, a.mask.to_spec()?)?;
    let (report, trials) = verify_bound_probability(&cfg)?;
    out.csv("trials.csv", &trials_csv(&trials), &mut std::io::sink())?;
    out.json("report.json", &report)?;
    print_json(stdout, &report)
}

fn cmd_concentration(a: &ConcentrationArgs, out: &Output, stdout: &mut dyn Write) -> Result<()> {
    let cfg = ConcentrationConfig {
        mask: a.mask.to_spec()?,
        n: a.n,
        b: a.b,
        rho: a.rho,
        t_grid: parse_grid(&a.t_grid)?,
        num_samples: a.samples,
        master_seed: a.seed.ok_or_else(|| invalid("randomized commands need --seed"))?,
    };
    let table = concentration_check(&cfg)?;
    out.csv("concentration.csv", &table.to_csv(), &mut std::io::sink())?;
    out.json("report.json", &table)?;
    print_json(
        stdout,
        &json!({ "tail": table.tail, "mean": table.mean, "all_pass": table.all_pass(), "rows": table.rows }),
    )
}

/// `q0,B,q1,theta1` rows, one curve per `(q0, B)` pair.
pub fn fig2_csv(q0_list: &[f64], b_list: &[usize], q1_grid: &[f64]) -> Result<String> {
    let mut s = String::from(FIG2_CSV_HEADER);
    s.push('\n');
    for &q0 in q0_list {
        for &b in b_list {
            for &q1 in q1_grid {
                s.push_str(&format!("{q0},{b},{q1},{}\n", theta1_closed(q0, q1, b)?));
            }
        }
    }
    Ok(s)
}

fn cmd_fig2(a: &Fig2Args, out: &Output, stdout: &mut dyn Write) -> Result<()> {
    let body = fig2_csv(&parse_grid(&a.q0_list)?, &parse_usize_list(&a.b_list)?, &parse_grid(&a.q1_grid)?)?;
    out.csv("fig2.csv", &body, stdout)
}
