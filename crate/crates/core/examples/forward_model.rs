//! Encode a small two-frame cube and check it against an explicit `H`.

use scimask::masks::MaskSpec;
use scimask::model::{encode, flatten_frame, normalized_distortion, unflatten_frame, NoiseSpec, SignalCube};

fn main() -> scimask::Result<()> {
    // Two 2×3 frames, vectorized column by column.
    let f1 = flatten_frame(&[vec![0.1, -0.2, 0.3], vec![0.4, 0.0, -0.1]])?;
    let f2 = flatten_frame(&[vec![-0.3, 0.2, 0.1], vec![0.0, 0.5, -0.5]])?;
    let x = SignalCube::new(vec![f1, f2], 1.0)?.with_frame_shape(2, 3)?;

    let masks = MaskSpec::iid(0.5)?.generate(x.num_frames(), x.frame_len(), 11)?;
    let y = encode(&x, &masks, NoiseSpec::NONE, 0)?;

    // H = [D_1, D_2] applied to the stacked signal.
    let n = x.frame_len();
    let dense: Vec<f64> =
        (0..n).map(|j| (0..x.num_frames()).map(|i| f64::from(masks.get(i, j)) * x.frame(i)[j]).sum()).collect();
    println!("masks: {:?}", masks.frames().collect::<Vec<_>>());
    println!("y       = {:?}", y.y);
    println!("H·x     = {dense:?}");
    println!("y as 2×3 grid: {:?}", unflatten_frame(&y.y, 2, 3)?);

    let noisy = encode(&x, &masks, NoiseSpec::new(0.05)?, 99)?;
    println!("noisy y = {:?} (noise_applied = {})", noisy.y, noisy.noise_applied);

    let zero = SignalCube::zeros(2, n, 1.0)?;
    println!("d(x, 0) = {}", normalized_distortion(&x, &zero)?);
    Ok(())
}
