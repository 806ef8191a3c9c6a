//! Counter-based seeding.
//!
//! Every random object is drawn from its own ChaCha stream whose seed is a
//! pure function of `(master_seed, domain, index)`. Output therefore does not
//! depend on generation order or on how work is split across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Domain tags keep substreams of different consumers apart.
pub mod domain {
    pub const IID_FRAME: u64 = 0x11;
    pub const INFRAME_CHAIN: u64 = 0x12;
    pub const OUTFRAME_CHAIN: u64 = 0x13;
    pub const NOISE: u64 = 0x20;
    pub const TRIAL: u64 = 0x30;
    pub const TRIAL_SIGNAL: u64 = 0x31;
    pub const TRIAL_MASK: u64 = 0x32;
    pub const SWEEP_POINT: u64 = 0x40;
    pub const CLASS: u64 = 0x50;
    pub const CONCENTRATION: u64 = 0x60;
    pub const CONCENTRATION_MU: u64 = 0x61;
}

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of substream `index` in `domain` under `master`.
pub fn substream_seed(master: u64, domain: u64, index: u64) -> u64 {
    let h = splitmix64(master ^ splitmix64(domain));
    splitmix64(h ^ splitmix64(index.wrapping_add(0x632B_E59B_D9B4_E019)))
}

pub fn substream(master: u64, domain: u64, index: u64) -> StreamRng {
    StreamRng::seed_from_u64(substream_seed(master, domain, index))
}
