//! Generate each mask model and compare empirical statistics to the
//! closed-form Markov quantities.

use scimask::masks::{gen_inframe_markov, gen_outframe_markov, MarkovMaskSpec, MaskSpec, Orientation};

fn main() -> scimask::Result<()> {
    let (b, n, seed) = (4, 100_000, 2024);

    let iid = MaskSpec::iid(0.3)?.generate(b, n, seed)?;
    println!("iid Bern(0.3): fraction of ones = {:.4}", iid.ones_fraction());

    let signed = MaskSpec::signed(0.7)?.generate(b, n, seed)?;
    let plus = signed.as_slice().iter().filter(|&&v| v == 1).count() as f64 / (b * n) as f64;
    println!("signed, P(+1)=0.7: fraction of +1 = {plus:.4}");

    let spec = MarkovMaskSpec::new(0.2, 0.4, Orientation::InFrame)?;
    let inframe = gen_inframe_markov(&spec, b, n, seed)?;
    println!(
        "in-frame q0=0.2 q1=0.4: ones = {:.4}, stationary p = {:.4}, alpha = {:.2}",
        inframe.ones_fraction(),
        spec.stationary_p(),
        spec.alpha()
    );
    for k in [1u32, 2, 3, 8] {
        let (mut hits, mut total) = (0usize, 0usize);
        for i in 0..b {
            let f = inframe.frame(i);
            for j in 0..n - k as usize {
                if f[j] == 1 {
                    total += 1;
                    hits += usize::from(f[j + k as usize] == 1);
                }
            }
        }
        println!(
            "  P(D[j+{k}]=1 | D[j]=1): empirical {:.4}, closed form {:.4}",
            hits as f64 / total as f64,
            spec.kstep_transition(k)
        );
    }

    let out_spec = MarkovMaskSpec::new(0.1, 0.1, Orientation::OutOfFrame)?;
    let outframe = gen_outframe_markov(&out_spec, 2, n, seed)?;
    let (mut stay, mut ones) = (0usize, 0usize);
    for j in 0..n {
        if outframe.get(0, j) == 1 {
            ones += 1;
            stay += usize::from(outframe.get(1, j) == 1);
        }
    }
    println!("out-of-frame q0=q1=0.1: P(D2=1 | D1=1) = {:.4} (expected 0.9)", stay as f64 / ones as f64);
    Ok(())
}
