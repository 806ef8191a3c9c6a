//! Contraction coefficient of the frame-vector Markov chain.
//!
//! With in-frame chains, the column `d_j = (D_1j, …, D_Bj)` is itself a
//! Markov chain on `{0,1}^B` whose kernel is a product of `B` copies of the
//! binary kernel. Its contraction coefficient `θ₁` is the largest total
//! variation distance between two rows of that product kernel.

use crate::error::{invalid, Result};

/// Enumeration in [`theta1_bruteforce`] is limited to `2^20` outcomes.
pub const MAX_ENUMERATION_FRAMES: usize = 20;

fn check_q(q0: f64, q1: f64) -> Result<()> {
    for (name, q) in [("q0", q0), ("q1", q1)] {
        if !(0.0..=1.0).contains(&q) {
            return Err(invalid(format!("{name} must lie in [0,1], got {q}")));
        }
    }
    Ok(())
}

/// `k·ln(y)` with the convention `0·ln 0 = 0`.
fn xlny(k: f64, y: f64) -> f64 {
    if k == 0.0 {
        0.0
    } else {
        k * y.ln()
    }
}

fn ln_binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).map(|i| ((n - i) as f64 / (i + 1) as f64).ln()).sum()
}

/// `θ₁ = ½ Σ_k C(B,k)·|(1−q₀)^k q₀^{B−k} − q₁^k (1−q₁)^{B−k}|`.
///
/// The sum groups outcomes by their number of zeros `k`. When the two
/// conditional kernels coincide (`q₀ + q₁ = 1`) the result is exactly 0.
pub fn theta1_closed(q0: f64, q1: f64, b: usize) -> Result<f64> {
    check_q(q0, q1)?;
    if b == 0 {
        return Err(invalid("B must be positive"));
    }
    if 1.0 - q0 - q1 == 0.0 {
        return Ok(0.0);
    }
    let bf = b as f64;
    let mut total = 0.0;
    for k in 0..=b {
        let kf = k as f64;
        let lc = ln_binomial(b, k);
        let from_zero = (lc + xlny(kf, 1.0 - q0) + xlny(bf - kf, q0)).exp();
        let from_one = (lc + xlny(kf, q1) + xlny(bf - kf, 1.0 - q1)).exp();
        total += (from_zero - from_one).abs();
    }
    Ok((0.5 * total).min(1.0))
}

/// Outcome-by-outcome evaluation of the contraction coefficient.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Theta1Enumeration {
    /// TV between the kernels started at all-zeros and all-ones.
    pub tv_at_extremes: f64,
    /// TV maximized over every pair of starting states.
    pub sup_over_all_pairs: f64,
}

/// Brute-force `θ₁` by enumerating all `2^B` outcomes.
///
/// For the supremum over starting pairs `(d′, d″)`: coordinates where the
/// two states agree contribute identical factors and drop out of the TV,
/// and marginalizing cannot increase TV, so it suffices to scan pairs that
/// differ everywhere. Those are indexed by the set of coordinates where `d′`
/// is zero.
pub fn theta1_bruteforce(q0: f64, q1: f64, b: usize) -> Result<Theta1Enumeration> {
    check_q(q0, q1)?;
    if b == 0 || b > MAX_ENUMERATION_FRAMES {
        return Err(invalid(format!("enumeration needs 1 <= B <= {MAX_ENUMERATION_FRAMES}, got {b}")));
    }
    // one-coordinate laws: row 0 of the kernel and row 1
    let from0 = [1.0 - q0, q0];
    let from1 = [q1, 1.0 - q1];
    let tv_split = |zeros_in_first: u32| -> f64 {
        // coordinates with bit set start at 0 under d′ and at 1 under d″
        let mut total = 0.0;
        for outcome in 0u32..(1u32 << b) {
            let mut pa = 1.0;
            let mut pb = 1.0;
            for i in 0..b {
                let o = ((outcome >> i) & 1) as usize;
                if (zeros_in_first >> i) & 1 == 1 {
                    pa *= from0[o];
                    pb *= from1[o];
                } else {
                    pa *= from1[o];
                    pb *= from0[o];
                }
            }
            total += (pa - pb).abs();
        }
        0.5 * total
    };
    let all = (1u32 << b) - 1;
    let tv_at_extremes = tv_split(all);
    // splits related by complement give the same TV (swap d′ and d″)
    let sup = (0..(1u32 << b)).filter(|&s| s <= (all ^ s)).map(tv_split).fold(tv_at_extremes, f64::max);
    Ok(Theta1Enumeration { tv_at_extremes, sup_over_all_pairs: sup })
}

/// `M_n = 1 + θ + … + θ^{n−1} = (1 − θⁿ)/(1 − θ)` for a stationary chain.
pub fn mn_factor(theta1: f64, n: usize) -> Result<f64> {
    if !(0.0..1.0).contains(&theta1) {
        return Err(invalid(format!("M_n needs 0 <= theta1 < 1, got {theta1}")));
    }
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    let tn = match i32::try_from(n) {
        Ok(k) => theta1.powi(k),
        Err(_) => 0.0,
    };
    Ok((1.0 - tn) / (1.0 - theta1))
}
