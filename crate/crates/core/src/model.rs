//! Signal cubes, mask cubes and the SCI forward model.
//!
//! A data cube of `B` frames, each `n1 × n2`, is stored vectorized: frame `b`
//! is `Vec(X_b)` (column-major), and the cube is the concatenation of its `B`
//! frames. The sensing matrix `H = [D₁, …, D_B]` is never materialized; the
//! diagonal blocks are held as a [`MaskCube`].

use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, shape, Error, Result};
use crate::rng::{self, domain};

/// Value set of the mask entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Alphabet {
    #[serde(rename = "binary01")]
    Binary01,
    #[serde(rename = "signed")]
    SignedPm1,
}

impl Alphabet {
    pub fn contains(self, v: i8) -> bool {
        match self {
            Alphabet::Binary01 => v == 0 || v == 1,
            Alphabet::SignedPm1 => v == -1 || v == 1,
        }
    }
}

/// Generator that produced a mask cube, with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum Provenance {
    IidBernoulli {
        p: f64,
    },
    IidSigned {
        p: f64,
    },
    InFrameMarkov {
        q0: f64,
        q1: f64,
    },
    OutFrameMarkov {
        q0: f64,
        q1: f64,
    },
    /// Supplied entry by entry rather than drawn from a generator.
    Explicit,
}

/// Ground-truth cube `x ∈ ℝ^{nB}` with `‖x‖∞ ≤ ρ/2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SignalCubeRepr", into = "SignalCubeRepr")]
pub struct SignalCube {
    num_frames: usize,
    frame_len: usize,
    rho: f64,
    frame_shape: Option<(usize, usize)>,
    data: Vec<f64>,
}

impl SignalCube {
    /// Builds a cube from `B` frames of equal length.
    pub fn new(frames: Vec<Vec<f64>>, rho: f64) -> Result<Self> {
        let b = frames.len();
        let n = frames.first().map_or(0, Vec::len);
        if frames.iter().any(|f| f.len() != n) {
            return Err(shape("frames have unequal lengths"));
        }
        Self::from_flat(b, n, rho, frames.into_iter().flatten().collect())
    }

    /// Builds a cube from the stacked vector `[x₁; …; x_B]`.
    pub fn from_flat(num_frames: usize, frame_len: usize, rho: f64, data: Vec<f64>) -> Result<Self> {
        if num_frames == 0 || frame_len == 0 {
            return Err(shape("a cube needs at least one frame of at least one pixel"));
        }
        if data.len() != num_frames * frame_len {
            return Err(shape(format!(
                "expected {} entries for B={num_frames}, n={frame_len}, got {}",
                num_frames * frame_len,
                data.len()
            )));
        }
        if !(rho.is_finite() && rho > 0.0) {
            return Err(invalid(format!("rho must be positive and finite, got {rho}")));
        }
        let half = rho / 2.0;
        if let Some((k, v)) = data.iter().enumerate().find(|(_, v)| !(v.abs() <= half)) {
            return Err(invalid(format!("entry {k} = {v} violates the l-infinity budget rho/2 = {half}")));
        }
        Ok(SignalCube { num_frames, frame_len, rho, frame_shape: None, data })
    }

    pub fn zeros(num_frames: usize, frame_len: usize, rho: f64) -> Result<Self> {
        Self::from_flat(num_frames, frame_len, rho, vec![0.0; num_frames * frame_len])
    }

    /// Records the pre-vectorization frame shape `n1 × n2`.
    pub fn with_frame_shape(mut self, n1: usize, n2: usize) -> Result<Self> {
        if n1 * n2 != self.frame_len {
            return Err(shape(format!("n1·n2 = {} does not match n = {}", n1 * n2, self.frame_len)));
        }
        self.frame_shape = Some((n1, n2));
        Ok(self)
    }

    /// Number of frames `B`.
    pub fn num_frames(&self) -> usize {
        self.num_frames
    }

    /// Pixels per frame `n`.
    pub fn frame_len(&self) -> usize {
        self.frame_len
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn frame_shape(&self) -> Option<(usize, usize)> {
        self.frame_shape
    }

    pub fn frame(&self, i: usize) -> &[f64] {
        &self.data[i * self.frame_len..(i + 1) * self.frame_len]
    }

    pub fn frames(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.frame_len)
    }

    /// The stacked vector `[x₁; …; x_B]`.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn same_shape(&self, other: &SignalCube) -> bool {
        self.num_frames == other.num_frames && self.frame_len == other.frame_len
    }

    fn check_same_shape(&self, other: &SignalCube) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(shape(format!(
                "cube shapes differ: (B={}, n={}) vs (B={}, n={})",
                self.num_frames, self.frame_len, other.num_frames, other.frame_len
            )))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SignalCubeRepr {
    #[serde(rename = "B")]
    b: usize,
    n: usize,
    rho: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n2: Option<usize>,
    frames: Vec<Vec<f64>>,
}

impl TryFrom<SignalCubeRepr> for SignalCube {
    type Error = Error;

    fn try_from(r: SignalCubeRepr) -> Result<Self> {
        if r.frames.len() != r.b || r.frames.iter().any(|f| f.len() != r.n) {
            return Err(shape("frames do not match the declared B and n"));
        }
        let cube = SignalCube::new(r.frames, r.rho)?;
        match (r.n1, r.n2) {
            (Some(n1), Some(n2)) => cube.with_frame_shape(n1, n2),
            (None, None) => Ok(cube),
            _ => Err(shape("n1 and n2 must be given together")),
        }
    }
}

impl From<SignalCube> for SignalCubeRepr {
    fn from(c: SignalCube) -> Self {
        SignalCubeRepr {
            b: c.num_frames,
            n: c.frame_len,
            rho: c.rho,
            n1: c.frame_shape.map(|s| s.0),
            n2: c.frame_shape.map(|s| s.1),
            frames: c.frames().map(<[f64]>::to_vec).collect(),
        }
    }
}

/// The mask values `D_ij`, frame-major: entry `(i, j)` is the `j`-th
/// diagonal entry of `D_i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MaskCubeRepr", into = "MaskCubeRepr")]
pub struct MaskCube {
    num_frames: usize,
    frame_len: usize,
    alphabet: Alphabet,
    provenance: Provenance,
    data: Vec<i8>,
}

impl MaskCube {
    pub fn new(frames: Vec<Vec<i8>>, alphabet: Alphabet, provenance: Provenance) -> Result<Self> {
        let b = frames.len();
        let n = frames.first().map_or(0, Vec::len);
        if frames.iter().any(|f| f.len() != n) {
            return Err(shape("mask frames have unequal lengths"));
        }
        Self::from_flat(b, n, alphabet, provenance, frames.into_iter().flatten().collect())
    }

    pub fn from_flat(
        num_frames: usize,
        frame_len: usize,
        alphabet: Alphabet,
        provenance: Provenance,
        data: Vec<i8>,
    ) -> Result<Self> {
        if num_frames == 0 || frame_len == 0 {
            return Err(shape("a mask cube needs at least one frame of at least one pixel"));
        }
        if data.len() != num_frames * frame_len {
            return Err(shape(format!("expected {} mask entries, got {}", num_frames * frame_len, data.len())));
        }
        if let Some(v) = data.iter().find(|&&v| !alphabet.contains(v)) {
            return Err(invalid(format!("mask value {v} outside alphabet {alphabet:?}")));
        }
        Ok(MaskCube { num_frames, frame_len, alphabet, provenance, data })
    }

    /// Explicit binary masks, mostly for hand-built instances.
    pub fn binary(frames: Vec<Vec<i8>>) -> Result<Self> {
        Self::new(frames, Alphabet::Binary01, Provenance::Explicit)
    }

    pub fn num_frames(&self) -> usize {
        self.num_frames
    }

    pub fn frame_len(&self) -> usize {
        self.frame_len
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn get(&self, frame: usize, pixel: usize) -> i8 {
        self.data[frame * self.frame_len + pixel]
    }

    pub fn frame(&self, i: usize) -> &[i8] {
        &self.data[i * self.frame_len..(i + 1) * self.frame_len]
    }

    pub fn frames(&self) -> impl Iterator<Item = &[i8]> {
        self.data.chunks_exact(self.frame_len)
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.data
    }

    /// Fraction of entries equal to `+1`.
    pub fn ones_fraction(&self) -> f64 {
        self.data.iter().filter(|&&v| v == 1).count() as f64 / self.data.len() as f64
    }

    /// Applies `H = [D₁, …, D_B]` to a stacked vector.
    pub fn apply(&self, stacked: &[f64]) -> Result<Vec<f64>> {
        self.check_len(stacked)?;
        let mut y = vec![0.0; self.frame_len];
        for (mask, frame) in self.frames().zip(stacked.chunks_exact(self.frame_len)) {
            for ((acc, &d), &v) in y.iter_mut().zip(mask).zip(frame) {
                *acc += f64::from(d) * v;
            }
        }
        Ok(y)
    }

    /// `‖y − Σᵢ Dᵢ cᵢ‖₂²` without allocating the projection.
    pub fn residual_energy(&self, y: &[f64], stacked: &[f64]) -> Result<f64> {
        self.check_len(stacked)?;
        if y.len() != self.frame_len {
            return Err(shape(format!("measurement length {} != n = {}", y.len(), self.frame_len)));
        }
        let n = self.frame_len;
        let mut total = 0.0;
        for j in 0..n {
            let mut proj = 0.0;
            for i in 0..self.num_frames {
                proj += f64::from(self.data[i * n + j]) * stacked[i * n + j];
            }
            let r = y[j] - proj;
            total += r * r;
        }
        Ok(total)
    }

    fn check_len(&self, stacked: &[f64]) -> Result<()> {
        if stacked.len() == self.num_frames * self.frame_len {
            Ok(())
        } else {
            Err(shape(format!(
                "stacked vector has {} entries, masks expect B·n = {}",
                stacked.len(),
                self.num_frames * self.frame_len
            )))
        }
    }

    pub fn matches(&self, x: &SignalCube) -> bool {
        self.num_frames == x.num_frames() && self.frame_len == x.frame_len()
    }
}

#[derive(Serialize, Deserialize)]
struct MaskCubeRepr {
    #[serde(rename = "B")]
    b: usize,
    n: usize,
    alphabet: Alphabet,
    #[serde(default = "explicit")]
    provenance: Provenance,
    frames: Vec<Vec<i8>>,
}

fn explicit() -> Provenance {
    Provenance::Explicit
}

impl TryFrom<MaskCubeRepr> for MaskCube {
    type Error = Error;

    fn try_from(r: MaskCubeRepr) -> Result<Self> {
        if r.frames.len() != r.b || r.frames.iter().any(|f| f.len() != r.n) {
            return Err(shape("mask frames do not match the declared B and n"));
        }
        MaskCube::new(r.frames, r.alphabet, r.provenance)
    }
}

impl From<MaskCube> for MaskCubeRepr {
    fn from(m: MaskCube) -> Self {
        MaskCubeRepr {
            b: m.num_frames,
            n: m.frame_len,
            alphabet: m.alphabet,
            provenance: m.provenance,
            frames: m.frames().map(<[i8]>::to_vec).collect(),
        }
    }
}

/// A single measurement frame `y ∈ ℝⁿ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub n: usize,
    pub y: Vec<f64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub noise_applied: bool,
}

/// i.i.d. zero-mean Gaussian sensor noise.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    sigma: f64,
}

impl NoiseSpec {
    pub const NONE: NoiseSpec = NoiseSpec { sigma: 0.0 };

    pub fn new(sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma >= 0.0) {
            return Err(invalid(format!("noise sigma must be finite and >= 0, got {sigma}")));
        }
        Ok(NoiseSpec { sigma })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

/// `y_j = Σᵢ D_ij x_ij + z_j`.
///
/// With `sigma = 0` the seed is ignored and the output is exact.
pub fn encode(x: &SignalCube, masks: &MaskCube, noise: NoiseSpec, seed: u64) -> Result<Measurement> {
    if !masks.matches(x) {
        return Err(shape(format!(
            "signal is B={}, n={} but masks are B={}, n={}",
            x.num_frames(),
            x.frame_len(),
            masks.num_frames(),
            masks.frame_len()
        )));
    }
    let mut y = masks.apply(x.as_slice())?;
    let noisy = noise.sigma > 0.0;
    if noisy {
        let normal = Normal::new(0.0, noise.sigma).map_err(|e| invalid(e.to_string()))?;
        let mut rng = rng::substream(seed, domain::NOISE, 0);
        for v in &mut y {
            *v += normal.sample(&mut rng);
        }
    }
    Ok(Measurement { n: y.len(), y, noise_applied: noisy })
}

/// `‖x − x̂‖₂²`.
pub fn squared_error(x: &SignalCube, xhat: &SignalCube) -> Result<f64> {
    x.check_same_shape(xhat)?;
    Ok(squared_distance(x.as_slice(), xhat.as_slice()))
}

/// `(1/nB)·‖x − x̂‖₂²`.
pub fn normalized_distortion(x: &SignalCube, xhat: &SignalCube) -> Result<f64> {
    let total = squared_error(x, xhat)?;
    Ok(total / (x.num_frames() * x.frame_len()) as f64)
}

pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v) * (u - v)).sum()
}

/// Column-major `Vec(X)` of an `n1 × n2` grid given as rows.
pub fn flatten_frame(rows: &[Vec<f64>]) -> Result<Vec<f64>> {
    let n1 = rows.len();
    let n2 = rows.first().map_or(0, Vec::len);
    if n1 == 0 || n2 == 0 {
        return Err(shape("frame must be at least 1×1"));
    }
    if rows.iter().any(|r| r.len() != n2) {
        return Err(shape("ragged frame rows"));
    }
    Ok((0..n2).flat_map(|c| rows.iter().map(move |r| r[c])).collect())
}

/// Inverse of [`flatten_frame`].
pub fn unflatten_frame(v: &[f64], n1: usize, n2: usize) -> Result<Vec<Vec<f64>>> {
    if n1 == 0 || n2 == 0 {
        return Err(shape("frame must be at least 1×1"));
    }
    if v.len() != n1 * n2 {
        return Err(shape(format!("vector of length {} cannot fill a {n1}×{n2} frame", v.len())));
    }
    Ok((0..n1).map(|r| (0..n2).map(|c| v[c * n1 + r]).collect()).collect())
}
