//! Contraction coefficient of in-frame chains: closed form versus outcome
//! enumeration, and the data behind the θ₁-versus-q₁ curves.

use scimask::cli::fig2_csv;
use scimask::theory::{mn_factor, theta1_bruteforce, theta1_closed};

fn main() -> scimask::Result<()> {
    for (q0, q1, b) in [(0.3, 0.7, 4), (0.3, 0.3, 2), (0.1, 0.1, 6), (0.05, 0.9, 8)] {
        let closed = theta1_closed(q0, q1, b)?;
        let e = theta1_bruteforce(q0, q1, b)?;
        println!(
            "q0={q0:<4} q1={q1:<4} B={b}: closed {closed:.6}, extremes {:.6}, sup over pairs {:.6}, M_1000 = {:.3}",
            e.tv_at_extremes,
            e.sup_over_all_pairs,
            mn_factor(closed, 1000)?
        );
    }
    let grid: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
    print!("{}", fig2_csv(&[0.2, 0.5], &[2, 8], &grid)?);
    Ok(())
}
