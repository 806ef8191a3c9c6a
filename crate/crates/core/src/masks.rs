//! Stochastic mask models.
//!
//! Four generators are provided: i.i.d. `{0,1}` Bernoulli, i.i.d. `{−1,+1}`,
//! and stationary binary Markov chains running either along the pixels of
//! each frame (in-frame) or along the frames at each pixel (out-of-frame).
//!
//! A chain has transition kernel
//!
//! ```text
//! P(next = 1 | cur = 0) = q0,   P(next = 0 | cur = 1) = q1
//! ```
//!
//! stationary law `Bern(q0/(q0+q1))` and second eigenvalue `α = 1 − q0 − q1`.
//! Every chain starts from its stationary law.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::model::{Alphabet, MaskCube, Provenance};
use crate::rng::{self, domain, StreamRng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    /// Chain along `j = 1..n` inside each frame; frames independent.
    InFrame,
    /// Chain along `i = 1..B` at each pixel; pixels independent.
    OutOfFrame,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BernoulliMaskSpec {
    p: f64,
    alphabet: Alphabet,
}

impl BernoulliMaskSpec {
    pub fn new(p: f64, alphabet: Alphabet) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(invalid(format!("Bernoulli probability must lie in (0,1), got {p}")));
        }
        Ok(BernoulliMaskSpec { p, alphabet })
    }

    /// `P(D_ij = +1)`.
    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MarkovMaskSpec {
    q0: f64,
    q1: f64,
    orientation: Orientation,
}

impl MarkovMaskSpec {
    pub fn new(q0: f64, q1: f64, orientation: Orientation) -> Result<Self> {
        for (name, q) in [("q0", q0), ("q1", q1)] {
            if !(0.0..=1.0).contains(&q) {
                return Err(invalid(format!("{name} must lie in [0,1], got {q}")));
            }
        }
        if q0 + q1 <= 0.0 {
            return Err(invalid("q0 + q1 must be positive for a unique stationary law"));
        }
        Ok(MarkovMaskSpec { q0, q1, orientation })
    }

    /// `P(next = 1 | current = 0)`.
    pub fn q0(&self) -> f64 {
        self.q0
    }

    /// `P(next = 0 | current = 1)`.
    pub fn q1(&self) -> f64 {
        self.q1
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn stationary_p(&self) -> f64 {
        self.q0 / (self.q0 + self.q1)
    }

    pub fn alpha(&self) -> f64 {
        1.0 - self.q0 - self.q1
    }

    /// Rows indexed by the current state, columns by the next state.
    pub fn transition_matrix(&self) -> [[f64; 2]; 2] {
        [[1.0 - self.q0, self.q0], [self.q1, 1.0 - self.q1]]
    }

    /// `P(D_{i+k} = 1 | D_i = 1) = p + (1 − p)·αᵏ`.
    pub fn kstep_transition(&self, k: u32) -> f64 {
        if k == 0 {
            return 1.0;
        }
        let p = self.stationary_p();
        p + (1.0 - p) * powi(self.alpha(), k)
    }

    /// Stationary marginal strictly inside `(0,1)`, as the bound evaluators need.
    pub fn nondegenerate_p(&self) -> Result<f64> {
        let p = self.stationary_p();
        if p > 0.0 && p < 1.0 {
            Ok(p)
        } else {
            Err(invalid(format!("stationary probability {p} is degenerate (q0={}, q1={})", self.q0, self.q1)))
        }
    }

    /// The cross-frame analysis assumes `q0, q1 ≤ 1/2`, i.e. `α ≥ 0`.
    pub fn check_nonnegative_memory(&self) -> Result<()> {
        if self.q0 <= 0.5 && self.q1 <= 0.5 {
            Ok(())
        } else {
            Err(Error::Inapplicable(format!(
                "out-of-frame analysis needs q0, q1 <= 0.5 (got q0={}, q1={})",
                self.q0, self.q1
            )))
        }
    }

    fn provenance(&self) -> Provenance {
        match self.orientation {
            Orientation::InFrame => Provenance::InFrameMarkov { q0: self.q0, q1: self.q1 },
            Orientation::OutOfFrame => Provenance::OutFrameMarkov { q0: self.q0, q1: self.q1 },
        }
    }
}

fn powi(base: f64, k: u32) -> f64 {
    match i32::try_from(k) {
        Ok(k) => base.powi(k),
        Err(_) => base.powf(f64::from(k)),
    }
}

pub fn stationary_p(spec: &MarkovMaskSpec) -> f64 {
    spec.stationary_p()
}

pub fn alpha(spec: &MarkovMaskSpec) -> f64 {
    spec.alpha()
}

pub fn kstep_transition(spec: &MarkovMaskSpec, k: u32) -> f64 {
    spec.kstep_transition(k)
}

/// All entries i.i.d.; one substream per frame.
pub fn gen_iid(spec: &BernoulliMaskSpec, num_frames: usize, frame_len: usize, seed: u64) -> Result<MaskCube> {
    check_dims(num_frames, frame_len)?;
    let (one, zero, provenance) = match spec.alphabet {
        Alphabet::Binary01 => (1i8, 0i8, Provenance::IidBernoulli { p: spec.p }),
        Alphabet::SignedPm1 => (1i8, -1i8, Provenance::IidSigned { p: spec.p }),
    };
    let mut data = vec![0i8; num_frames * frame_len];
    data.par_chunks_mut(frame_len).enumerate().for_each(|(i, frame)| {
        let mut rng = rng::substream(seed, domain::IID_FRAME, i as u64);
        for v in frame {
            *v = if rng.random_bool(spec.p) { one } else { zero };
        }
    });
    MaskCube::from_flat(num_frames, frame_len, spec.alphabet, provenance, data)
}

/// Each frame is an independent stationary chain along its pixels.
pub fn gen_inframe_markov(spec: &MarkovMaskSpec, num_frames: usize, frame_len: usize, seed: u64) -> Result<MaskCube> {
    if spec.orientation != Orientation::InFrame {
        return Err(invalid("in-frame generator needs an InFrame spec"));
    }
    check_dims(num_frames, frame_len)?;
    let mut data = vec![0i8; num_frames * frame_len];
    data.par_chunks_mut(frame_len).enumerate().for_each(|(i, frame)| {
        let mut rng = rng::substream(seed, domain::INFRAME_CHAIN, i as u64);
        run_chain(spec, &mut rng, frame);
    });
    MaskCube::from_flat(num_frames, frame_len, Alphabet::Binary01, spec.provenance(), data)
}

/// Each pixel carries an independent stationary chain across the frames.
pub fn gen_outframe_markov(spec: &MarkovMaskSpec, num_frames: usize, frame_len: usize, seed: u64) -> Result<MaskCube> {
    if spec.orientation != Orientation::OutOfFrame {
        return Err(invalid("out-of-frame generator needs an OutOfFrame spec"));
    }
    check_dims(num_frames, frame_len)?;
    // pixel-major scratch, transposed below
    let mut columns = vec![0i8; num_frames * frame_len];
    columns.par_chunks_mut(num_frames).enumerate().for_each(|(j, col)| {
        let mut rng = rng::substream(seed, domain::OUTFRAME_CHAIN, j as u64);
        run_chain(spec, &mut rng, col);
    });
    let mut data = vec![0i8; num_frames * frame_len];
    for (j, col) in columns.chunks_exact(num_frames).enumerate() {
        for (i, &v) in col.iter().enumerate() {
            data[i * frame_len + j] = v;
        }
    }
    MaskCube::from_flat(num_frames, frame_len, Alphabet::Binary01, spec.provenance(), data)
}

fn run_chain(spec: &MarkovMaskSpec, rng: &mut StreamRng, out: &mut [i8]) {
    let mut state = rng.random_bool(spec.stationary_p());
    for v in out {
        *v = i8::from(state);
        state = if state { !rng.random_bool(spec.q1) } else { rng.random_bool(spec.q0) };
    }
}

fn check_dims(num_frames: usize, frame_len: usize) -> Result<()> {
    if num_frames == 0 || frame_len == 0 {
        Err(invalid("mask cube dimensions must be positive"))
    } else {
        Ok(())
    }
}

/// Any of the supported mask models.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MaskSpecRepr", into = "MaskSpecRepr")]
pub enum MaskSpec {
    Iid(BernoulliMaskSpec),
    Markov(MarkovMaskSpec),
}

impl MaskSpec {
    pub fn iid(p: f64) -> Result<Self> {
        Ok(MaskSpec::Iid(BernoulliMaskSpec::new(p, Alphabet::Binary01)?))
    }

    pub fn signed(p: f64) -> Result<Self> {
        Ok(MaskSpec::Iid(BernoulliMaskSpec::new(p, Alphabet::SignedPm1)?))
    }

    pub fn inframe(q0: f64, q1: f64) -> Result<Self> {
        Ok(MaskSpec::Markov(MarkovMaskSpec::new(q0, q1, Orientation::InFrame)?))
    }

    pub fn outframe(q0: f64, q1: f64) -> Result<Self> {
        Ok(MaskSpec::Markov(MarkovMaskSpec::new(q0, q1, Orientation::OutOfFrame)?))
    }

    pub fn alphabet(&self) -> Alphabet {
        match self {
            MaskSpec::Iid(s) => s.alphabet,
            MaskSpec::Markov(_) => Alphabet::Binary01,
        }
    }

    /// Marginal probability of a `+1` entry.
    pub fn marginal_p(&self) -> f64 {
        match self {
            MaskSpec::Iid(s) => s.p,
            MaskSpec::Markov(m) => m.stationary_p(),
        }
    }

    pub fn generate(&self, num_frames: usize, frame_len: usize, seed: u64) -> Result<MaskCube> {
        match self {
            MaskSpec::Iid(s) => gen_iid(s, num_frames, frame_len, seed),
            MaskSpec::Markov(m) => match m.orientation {
                Orientation::InFrame => gen_inframe_markov(m, num_frames, frame_len, seed),
                Orientation::OutOfFrame => gen_outframe_markov(m, num_frames, frame_len, seed),
            },
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MaskSpecRepr {
    model: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q1: Option<f64>,
    alphabet: Alphabet,
}

impl TryFrom<MaskSpecRepr> for MaskSpec {
    type Error = Error;

    fn try_from(r: MaskSpecRepr) -> Result<Self> {
        let need =
            |v: Option<f64>, name: &str| v.ok_or_else(|| invalid(format!("mask model {} needs {name}", r.model)));
        match r.model.as_str() {
            "iid" => Ok(MaskSpec::Iid(BernoulliMaskSpec::new(need(r.p, "p")?, r.alphabet)?)),
            "inframe" | "outframe" => {
                if r.alphabet != Alphabet::Binary01 {
                    return Err(invalid("Markov masks are binary01 only"));
                }
                let orientation = if r.model == "inframe" { Orientation::InFrame } else { Orientation::OutOfFrame };
                Ok(MaskSpec::Markov(MarkovMaskSpec::new(need(r.q0, "q0")?, need(r.q1, "q1")?, orientation)?))
            }
            other => Err(invalid(format!("unknown mask model {other:?}"))),
        }
    }
}

impl From<MaskSpec> for MaskSpecRepr {
    fn from(s: MaskSpec) -> Self {
        match s {
            MaskSpec::Iid(b) => {
                MaskSpecRepr { model: "iid".into(), p: Some(b.p), q0: None, q1: None, alphabet: b.alphabet }
            }
            MaskSpec::Markov(m) => MaskSpecRepr {
                model: match m.orientation {
                    Orientation::InFrame => "inframe".into(),
                    Orientation::OutOfFrame => "outframe".into(),
                },
                p: None,
                q0: Some(m.q0),
                q1: Some(m.q1),
                alphabet: Alphabet::Binary01,
            },
        }
    }
}
