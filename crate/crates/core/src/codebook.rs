//! Explicit compression codebooks and the compressible-signal-pursuit decoder.
//!
//! A rate-`r` code for cubes of `B` frames has at most `2^{B·r}` codewords.
//! Signals are drawn from a [`SignalClass`]: a finite anchor set plus an ℓ₂
//! perturbation ball of radius `ε_Q`. Nearest-anchor quantization of that
//! class has worst-case squared error `ε_Q²`, which is what the codebook
//! certifies.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, shape, Error, Result};
use crate::model::{squared_distance, MaskCube, Measurement, SignalCube};
use crate::rng::{self, domain};

/// Anchors plus a perturbation radius.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SignalClassRepr", into = "SignalClassRepr")]
pub struct SignalClass {
    anchors: Vec<SignalCube>,
    perturbation_radius: f64,
}

impl SignalClass {
    pub fn new(anchors: Vec<SignalCube>, perturbation_radius: f64) -> Result<Self> {
        let first = anchors.first().ok_or_else(|| invalid("signal class needs at least one anchor"))?;
        if anchors.iter().any(|a| !a.same_shape(first) || a.rho() != first.rho()) {
            return Err(shape("anchors must share B, n and rho"));
        }
        if !(perturbation_radius.is_finite() && perturbation_radius >= 0.0) {
            return Err(invalid(format!("perturbation radius must be >= 0, got {perturbation_radius}")));
        }
        Ok(SignalClass { anchors, perturbation_radius })
    }

    /// `count` anchors with entries uniform in `[−a, a]`, `a = amplitude·ρ/2`.
    ///
    /// `amplitude < 1` leaves room inside the ℓ∞ box for perturbations.
    pub fn random(
        num_frames: usize,
        frame_len: usize,
        rho: f64,
        count: usize,
        amplitude: f64,
        perturbation_radius: f64,
        seed: u64,
    ) -> Result<Self> {
        if count == 0 {
            return Err(invalid("signal class needs at least one anchor"));
        }
        if !(0.0..=1.0).contains(&amplitude) {
            return Err(invalid(format!("anchor amplitude must lie in [0,1], got {amplitude}")));
        }
        let a = amplitude * rho / 2.0;
        let anchors = (0..count)
            .map(|k| {
                let mut rng = rng::substream(seed, domain::CLASS, k as u64);
                let data = (0..num_frames * frame_len).map(|_| rng.random_range(-a..=a)).collect();
                SignalCube::from_flat(num_frames, frame_len, rho, data)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(anchors, perturbation_radius)
    }

    pub fn anchors(&self) -> &[SignalCube] {
        &self.anchors
    }

    pub fn perturbation_radius(&self) -> f64 {
        self.perturbation_radius
    }

    pub fn num_frames(&self) -> usize {
        self.anchors[0].num_frames()
    }

    pub fn frame_len(&self) -> usize {
        self.anchors[0].frame_len()
    }

    pub fn rho(&self) -> f64 {
        self.anchors[0].rho()
    }

    /// Draws `anchor + s·e` with `‖e‖₂ = ε_Q` in a uniform direction and
    /// `s ∈ [0,1]` the largest step keeping every entry within `ρ/2`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> SignalCube {
        let k = rng.random_range(0..self.anchors.len());
        let anchor = &self.anchors[k];
        if self.perturbation_radius == 0.0 {
            return anchor.clone();
        }
        let mut e: Vec<f64> = (0..anchor.as_slice().len()).map(|_| rng.sample(StandardNormal)).collect();
        let norm = e.iter().map(|v| v * v).sum::<f64>().sqrt();
        let scale = self.perturbation_radius / norm;
        e.iter_mut().for_each(|v| *v *= scale);
        self.perturb(anchor, &e)
    }

    /// `anchor + s·e`, shrinking `s` from 1 only as far as the ℓ∞ budget needs.
    pub fn perturb(&self, anchor: &SignalCube, e: &[f64]) -> SignalCube {
        let half = anchor.rho() / 2.0;
        let a = anchor.as_slice();
        let mut step = 1.0f64;
        for (&ak, &ek) in a.iter().zip(e) {
            if ek > 0.0 {
                step = step.min((half - ak) / ek);
            } else if ek < 0.0 {
                step = step.min((-half - ak) / ek);
            }
        }
        let step = step.max(0.0);
        let data = a.iter().zip(e).map(|(&ak, &ek)| (ak + step * ek).clamp(-half, half)).collect();
        SignalCube::from_flat(anchor.num_frames(), anchor.frame_len(), anchor.rho(), data)
            .expect("perturbed signal stays in the class box")
    }
}

#[derive(Serialize, Deserialize)]
struct SignalClassRepr {
    anchors: Vec<SignalCube>,
    perturbation_radius: f64,
}

impl TryFrom<SignalClassRepr> for SignalClass {
    type Error = Error;

    fn try_from(r: SignalClassRepr) -> Result<Self> {
        SignalClass::new(r.anchors, r.perturbation_radius)
    }
}

impl From<SignalClass> for SignalClassRepr {
    fn from(c: SignalClass) -> Self {
        SignalClassRepr { anchors: c.anchors, perturbation_radius: c.perturbation_radius }
    }
}

/// A finite codebook with declared rate and certified distortion.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CodebookRepr", into = "CodebookRepr")]
pub struct Codebook {
    codewords: Vec<SignalCube>,
    rate_r: f64,
    certified_delta: f64,
}

impl Codebook {
    /// Checks `|C| ≤ 2^{B·r}` and that all codewords share shape and budget.
    pub fn new(codewords: Vec<SignalCube>, rate_r: f64, certified_delta: f64) -> Result<Self> {
        let first = codewords.first().ok_or(Error::EmptyCodebook)?;
        if codewords.iter().any(|c| !c.same_shape(first) || c.rho() != first.rho()) {
            return Err(shape("codewords must share B, n and rho"));
        }
        if !(rate_r.is_finite() && rate_r >= 0.0) {
            return Err(invalid(format!("rate must be finite and >= 0, got {rate_r}")));
        }
        if !(certified_delta.is_finite() && certified_delta >= 0.0) {
            return Err(invalid(format!("distortion must be finite and >= 0, got {certified_delta}")));
        }
        let budget_bits = first.num_frames() as f64 * rate_r;
        if (codewords.len() as f64).log2() > budget_bits + 1e-12 {
            return Err(invalid(format!("{} codewords exceed 2^(B·r) = 2^{budget_bits}", codewords.len())));
        }
        Ok(Codebook { codewords, rate_r, certified_delta })
    }

    pub fn codewords(&self) -> &[SignalCube] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn rate(&self) -> f64 {
        self.rate_r
    }

    pub fn certified_delta(&self) -> f64 {
        self.certified_delta
    }

    pub fn num_frames(&self) -> usize {
        self.codewords[0].num_frames()
    }

    pub fn frame_len(&self) -> usize {
        self.codewords[0].frame_len()
    }

    pub fn rho(&self) -> f64 {
        self.codewords[0].rho()
    }
}

#[derive(Serialize, Deserialize)]
struct CodebookRepr {
    #[serde(rename = "B")]
    b: usize,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rho: Option<f64>,
    rate_r: f64,
    delta: f64,
    codewords: Vec<Vec<f64>>,
}

impl TryFrom<CodebookRepr> for Codebook {
    type Error = Error;

    fn try_from(r: CodebookRepr) -> Result<Self> {
        if r.codewords.is_empty() {
            return Err(Error::EmptyCodebook);
        }
        // Without an explicit budget, the tightest one the codewords allow.
        let rho = match r.rho {
            Some(rho) => rho,
            None => {
                let m = r.codewords.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
                if m > 0.0 {
                    2.0 * m
                } else {
                    1.0
                }
            }
        };
        let words =
            r.codewords.into_iter().map(|c| SignalCube::from_flat(r.b, r.n, rho, c)).collect::<Result<Vec<_>>>()?;
        Codebook::new(words, r.rate_r, r.delta)
    }
}

impl From<Codebook> for CodebookRepr {
    fn from(cb: Codebook) -> Self {
        CodebookRepr {
            b: cb.num_frames(),
            n: cb.frame_len(),
            rho: Some(cb.rho()),
            rate_r: cb.rate_r,
            delta: cb.certified_delta,
            codewords: cb.codewords.into_iter().map(SignalCube::into_vec).collect(),
        }
    }
}

/// Codebook whose codewords are the class anchors, in order.
///
/// `rate_r = ⌈log₂ K⌉ / B` and `δ = ε_Q²`.
pub fn build_anchor_codebook(class: &SignalClass) -> Result<Codebook> {
    let k = class.anchors.len();
    let bits = (k as f64).log2().ceil();
    let rate = bits / class.num_frames() as f64;
    let r = class.perturbation_radius;
    Codebook::new(class.anchors.clone(), rate, r * r)
}

/// Nearest codeword in ℓ₂ and its index; ties go to the lowest index.
pub fn compress<'a>(cb: &'a Codebook, x: &SignalCube) -> Result<(usize, &'a SignalCube)> {
    if !x.same_shape(&cb.codewords[0]) {
        return Err(shape("signal does not match codebook shape"));
    }
    let mut best = (f64::INFINITY, 0usize);
    for (k, c) in cb.codewords.iter().enumerate() {
        let d = squared_distance(x.as_slice(), c.as_slice());
        if d < best.0 {
            best = (d, k);
        }
    }
    Ok((best.1, &cb.codewords[best.1]))
}

/// Result of an exhaustive CSP scan.
#[derive(Clone, Debug, PartialEq)]
pub struct CspSolution {
    pub index: usize,
    pub xhat: SignalCube,
    pub objective: f64,
}

/// `x̂ = argmin_{c ∈ C} ‖y − Σᵢ Dᵢ cᵢ‖₂²` by full scan.
///
/// The scan may run on several threads; the reduction picks the smallest
/// `(objective, index)` pair, so the answer never depends on scheduling.
pub fn csp_decode(y: &Measurement, masks: &MaskCube, cb: &Codebook) -> Result<CspSolution> {
    if cb.is_empty() {
        return Err(Error::EmptyCodebook);
    }
    if masks.num_frames() != cb.num_frames() || masks.frame_len() != cb.frame_len() || y.y.len() != cb.frame_len() {
        return Err(shape("measurement, masks and codebook disagree on B or n"));
    }
    let (objective, index) = cb
        .codewords
        .par_iter()
        .enumerate()
        .map(|(k, c)| masks.residual_energy(&y.y, c.as_slice()).map(|obj| (obj, k)))
        .try_reduce(|| (f64::INFINITY, usize::MAX), |a, b| Ok(lexi_min(a, b)))?;
    Ok(CspSolution { index, xhat: cb.codewords[index].clone(), objective })
}

fn lexi_min(a: (f64, usize), b: (f64, usize)) -> (f64, usize) {
    if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

/// All CSP objectives in codebook order.
pub fn csp_objectives(y: &Measurement, masks: &MaskCube, cb: &Codebook) -> Result<Vec<f64>> {
    cb.codewords.iter().map(|c| masks.residual_energy(&y.y, c.as_slice())).collect()
}

/// `max_x ‖x − compress(x)‖₂²` over the samples; a lower bound on the true `δ`.
pub fn measure_empirical_delta(cb: &Codebook, samples: &[SignalCube]) -> Result<f64> {
    if samples.is_empty() {
        return Err(invalid("need at least one sample"));
    }
    samples.iter().try_fold(0.0f64, |m, x| {
        let (_, c) = compress(cb, x)?;
        Ok(m.max(squared_distance(x.as_slice(), c.as_slice())))
    })
}
