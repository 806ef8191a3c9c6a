//! Empirical tails of the mean pixel energy against Hoeffding (independent
//! columns) and the Markov-chain concentration bound (in-frame chains).

use scimask::experiments::{concentration_check, ConcentrationConfig};
use scimask::masks::MaskSpec;

fn main() -> scimask::Result<()> {
    let t_grid: Vec<f64> = (1..=10).map(|k| 0.05 * k as f64).collect();
    for (name, mask) in [("iid p=0.5", MaskSpec::iid(0.5)?), ("in-frame q0=q1=0.3", MaskSpec::inframe(0.3, 0.3)?)] {
        let cfg = ConcentrationConfig {
            mask,
            n: 1024,
            b: 2,
            rho: 1.0,
            t_grid: t_grid.clone(),
            num_samples: 10_000,
            master_seed: 8,
        };
        let table = concentration_check(&cfg)?;
        println!("{name}: mean {:.5}, tail {:?}, all pass {}", table.mean, table.tail, table.all_pass());
        print!("{}", table.to_csv());
    }
    Ok(())
}
