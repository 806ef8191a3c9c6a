//! Snapshot compressive imaging (SCI) with binary masks.
//!
//! The crate covers the whole chain from a 3D signal cube to a recovery
//! guarantee:
//!
//! * [`model`]: signal and mask cubes, the SCI forward encoder
//!   `y = Σᵢ Dᵢ xᵢ + z`, and the normalized distortion metric.
//! * [`masks`]: i.i.d. Bernoulli / signed masks and stationary binary Markov
//!   masks, correlated either along a frame or across frames.
//! * [`codebook`]: explicit rate/distortion codebooks and the exhaustive
//!   compressible-signal-pursuit (CSP) decoder.
//! * [`theory`]: closed-form distortion bounds, probability guarantees, the
//!   optimal mask density, Markov contraction coefficients, correlation
//!   spectra and concentration tails.
//! * [`experiments`]: a seeded Monte Carlo harness comparing CSP recovery
//!   against the bounds.
//! * [`cli`]: the command-line front end used by the `scimask` binary.
//!
//! Runnable walkthroughs for each capability live in `examples/`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod codebook;
pub mod error;
pub mod experiments;
pub mod masks;
pub mod model;
pub mod rng;
pub mod theory;

pub use error::{Error, Result};
