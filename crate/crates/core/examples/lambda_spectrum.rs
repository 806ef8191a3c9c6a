//! Extreme eigenvalues of the cross-frame correlation matrix against the
//! Gershgorin estimates, and the resulting out-of-frame bounds.

use scimask::theory::{
    cor2_bound, gershgorin_bounds, lambda_extremes, lambda_matrix, thm1_bound, thm3_bound, BoundParams, Cor2Mode,
};

fn main() -> scimask::Result<()> {
    println!("alpha   B   lambda_min  lambda_max  gersh_low  gersh_high");
    for alpha in [0.0, 0.1, 0.2, 0.3] {
        for b in [2, 8, 16] {
            let (lo, hi) = lambda_extremes(&lambda_matrix(alpha, b)?)?;
            let (glo, ghi) = gershgorin_bounds(alpha)?;
            println!("{alpha:<6}{b:>3}   {lo:>10.6}  {hi:>10.6}  {glo:>9.6}  {ghi:>10.6}");
        }
    }
    let params = BoundParams::new(4096, 8, 3.0, 100.0, 1.0, 0.2)?;
    let p = 0.4;
    println!("\nbounds at p = {p}:  thm1 {:.5}", thm1_bound(p, &params)?.distortion_bound);
    for alpha in [0.0, 0.1, 0.2, 0.3] {
        println!(
            "alpha {alpha}: thm3 {:.5}  cor2 (proof-derived) {:.5}  cor2 (literal) {:.5}",
            thm3_bound(p, alpha, &params)?.distortion_bound,
            cor2_bound(p, alpha, &params, Cor2Mode::ProofDerived)?.distortion_bound,
            cor2_bound(p, alpha, &params, Cor2Mode::PaperLiteral)?.distortion_bound,
        );
    }
    Ok(())
}
