//! Build an anchor codebook, sense a perturbed signal, and recover it with
//! exhaustive compressible signal pursuit.

use scimask::codebook::{build_anchor_codebook, compress, csp_decode, csp_objectives, SignalClass};
use scimask::masks::MaskSpec;
use scimask::model::{encode, normalized_distortion, NoiseSpec};
use scimask::rng;

fn main() -> scimask::Result<()> {
    let (b, n, rho) = (2, 256, 1.0);
    let class = SignalClass::random(b, n, rho, 16, 0.5, 0.5, 1)?;
    let cb = build_anchor_codebook(&class)?;
    println!("codebook: {} words, rate {} bits/frame, certified delta {}", cb.len(), cb.rate(), cb.certified_delta());

    let mut r = rng::substream(5, 0, 0);
    let x = class.sample(&mut r);
    let masks = MaskSpec::iid(0.4)?.generate(b, n, 77)?;
    let y = encode(&x, &masks, NoiseSpec::NONE, 0)?;

    let sol = csp_decode(&y, &masks, &cb)?;
    let (nearest, xtilde) = compress(&cb, &x)?;
    let objectives = csp_objectives(&y, &masks, &cb)?;
    let runner_up =
        objectives.iter().enumerate().filter(|(k, _)| *k != sol.index).map(|(_, v)| *v).fold(f64::INFINITY, f64::min);

    println!(
        "nearest codeword {nearest}, CSP picked {} (objective {:.4}, next best {:.4})",
        sol.index, sol.objective, runner_up
    );
    println!("residual of nearest codeword: {:.4}", masks.residual_energy(&y.y, xtilde.as_slice())?);
    println!("(1/nB)||x - xhat||^2 = {:.3e}", normalized_distortion(&x, &sol.xhat)?);
    println!("delta/(nB)          = {:.3e}", cb.certified_delta() / (n * b) as f64);
    Ok(())
}
