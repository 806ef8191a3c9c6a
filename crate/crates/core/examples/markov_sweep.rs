//! Bound curves over mask density and over Markov memory.

use scimask::codebook::SignalClass;
use scimask::experiments::{sweep_markov, sweep_p, MarkovGrid, TrialConfig};
use scimask::masks::{MaskSpec, Orientation};

fn main() -> scimask::Result<()> {
    let class = SignalClass::random(2, 1024, 1.0, 16, 0.5, 2.0, 9)?;
    let cfg = TrialConfig::from_class(class, MaskSpec::iid(0.5)?, 0.2, 20, 1)?;

    let grid: Vec<f64> = (1..20).map(|k| k as f64 / 20.0).collect();
    let s = sweep_p(&cfg, &grid)?;
    print!("{}", s.to_csv());
    println!("summary: {}\n", serde_json::to_string(&s.summary).unwrap());

    let alphas = [0.0, 0.1, 0.2, 0.3, 0.5];
    let inframe = sweep_markov(&cfg, &MarkovGrid::symmetric_alpha(Orientation::InFrame, &alphas))?;
    print!("{}", inframe.to_csv());
    let outframe = sweep_markov(
        &cfg,
        &MarkovGrid { orientation: Orientation::OutOfFrame, pairs: vec![(0.5, 0.5), (0.3, 0.3), (0.7, 0.2)] },
    )?;
    print!("{}", outframe.to_csv());
    Ok(())
}
