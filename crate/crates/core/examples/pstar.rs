//! Locate the bound-optimal i.i.d. mask density and compare it with a grid
//! search and with the signed-mask corollary.

use scimask::theory::{cor1_bound, thm1_bound, thm1_pstar, BoundParams};

fn main() -> scimask::Result<()> {
    for delta in [0.0, 10.0, 500.0, 5000.0] {
        let params = BoundParams::new(4096, 8, 3.0, delta, 1.0, 0.2)?;
        let ps = thm1_pstar(&params)?;
        let grid: Vec<f64> = (1..1000).map(|k| k as f64 / 1000.0).collect();
        let best = grid
            .iter()
            .map(|&p| (thm1_bound(p, &params).unwrap().distortion_bound, p))
            .fold((f64::INFINITY, 0.0), |a, b| if b.0 < a.0 { b } else { a });
        println!(
            "delta = {delta:>6}: p* = {:.5}{} grid argmin = {:.3}, bound at p* = {:.5}, at 0.5 = {:.5}",
            ps.p,
            if ps.degenerate { " (degenerate)," } else { "," },
            best.1,
            thm1_bound(ps.p, &params)?.distortion_bound,
            thm1_bound(0.5, &params)?.distortion_bound,
        );
    }
    let params = BoundParams::new(4096, 8, 3.0, 500.0, 1.0, 0.2)?;
    println!(
        "signed masks: bound at 0.3 = {:.5}, at 0.5 = {:.5}, at 0.7 = {:.5}",
        cor1_bound(0.3, &params)?.distortion_bound,
        cor1_bound(0.5, &params)?.distortion_bound,
        cor1_bound(0.7, &params)?.distortion_bound
    );
    Ok(())
}
