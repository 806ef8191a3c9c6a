//! Monte Carlo check of the recovery guarantee for every mask model.

use scimask::codebook::SignalClass;
use scimask::experiments::{verify_bound_probability, TrialConfig};
use scimask::masks::MaskSpec;

fn main() -> scimask::Result<()> {
    let class = SignalClass::random(2, 4096, 1.0, 64, 0.5, 1.0, 3)?;
    let models = [
        ("iid p=0.5", MaskSpec::iid(0.5)?),
        ("signed p=0.5", MaskSpec::signed(0.5)?),
        ("in-frame q0=q1=0.45", MaskSpec::inframe(0.45, 0.45)?),
        ("out-of-frame q0=q1=0.4", MaskSpec::outframe(0.4, 0.4)?),
    ];
    for (name, mask) in models {
        let cfg = TrialConfig::from_class(class.clone(), mask, 0.2, 200, 42)?;
        let (report, trials) = verify_bound_probability(&cfg)?;
        let worst = trials.iter().map(|t| t.empirical_distortion).fold(0.0, f64::max);
        println!(
            "{name:<24} {}: bound {:.4}, worst distortion {:.2e}, satisfied {}/{}, guarantee {:.4}, pass {}",
            report.bound.theorem.as_str(),
            report.bound.distortion_bound,
            worst,
            report.num_satisfied,
            report.num_trials,
            report.prob_lower_clamped,
            report.pass
        );
    }
    Ok(())
}
