mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use scimask::masks::{MarkovMaskSpec, Orientation};
use scimask::theory::*;
use scimask::Error;

fn params(n: usize, b: usize, r: f64, delta: f64, rho: f64, eps: f64) -> BoundParams {
    BoundParams::new(n, b, r, delta, rho, eps).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn inframe(q0: f64, q1: f64) -> MarkovMaskSpec {
    MarkovMaskSpec::new(q0, q1, Orientation::InFrame).unwrap()
}

fn arb_params() -> impl Strategy<Value = BoundParams> {
    (1usize..100_000, 1usize..32, 0.1f64..8.0, 1e-6f64..100.0, 0.1f64..4.0, 1e-4f64..2.0)
        .prop_map(|(n, b, r, d, rho, e)| params(n, b, r, d, rho, e))
}

#[test]
fn thm1_half_density() {
    let pr = params(4096, 2, 3.0, 0.01, 1.0, 0.2);
    let got = thm1_bound(0.5, &pr).unwrap();
    assert!(rel(got.distortion_bound, 3.0 * 0.01 / 8192.0 + 0.8) <= 1e-14);
    assert_eq!(got.theorem, TheoremTag::Thm1);
    let pr0 = params(100, 3, 1.0, 0.0, 1.0, 0.37);
    assert!(rel(thm1_bound(0.5, &pr0).unwrap().distortion_bound, 4.0 * 0.37) <= 1e-15);
}

#[test]
fn thm1_probability_matches_exact_arithmetic() {
    let pr = params(4096, 2, 3.0, 0.01, 1.0, 0.2);
    let got = thm1_bound(0.5, &pr).unwrap().prob_lower_raw;
    // n·ε²/(2B²) = 4096·0.04/8 = 20.48 exactly in decimal
    let x = num_rational::BigRational::new(2048.into(), 100.into());
    let oracle = one_minus_pow2_exp_neg(7, &x);
    assert!((got - oracle).abs() <= 1e-15, "{got} vs {oracle}");
    assert!(got > 0.999);
}

#[test]
fn thm1_proof_form_is_less_conservative() {
    let pr = params(4096, 2, 3.0, 0.01, 1.0, 0.2);
    let stated = thm1_bound(0.5, &pr).unwrap().prob_lower_raw;
    let proof = thm1_prob_proof_form(&pr).unwrap();
    let x = num_rational::BigRational::new(2048.into(), 100.into());
    let e = exp_rational(&x);
    use num_traits::{One, ToPrimitive};
    let oracle =
        (num_rational::BigRational::one() - num_rational::BigRational::from_integer(65.into()) / e).to_f64().unwrap();
    assert!((proof - oracle).abs() <= 1e-15);
    assert!(proof > stated);
}

#[test]
fn thm1_diverges_at_edges() {
    let pr = params(1024, 4, 2.0, 0.5, 1.0, 0.1);
    let mid = thm1_bound(0.4, &pr).unwrap().distortion_bound;
    for p in [1e-6, 1.0 - 1e-6] {
        assert!(thm1_bound(p, &pr).unwrap().distortion_bound > 1e4 * mid);
    }
    for p in [0.0, 1.0] {
        let r = thm1_bound(p, &pr).unwrap();
        assert!(r.is_degenerate());
    }
    assert!(thm1_bound(1.5, &pr).is_err());
}

#[test]
fn params_validation() {
    assert!(BoundParams::new(0, 1, 1.0, 0.0, 1.0, 1.0).is_err());
    assert!(BoundParams::new(1, 1, 1.0, -1.0, 1.0, 1.0).is_err());
    assert!(BoundParams::new(1, 1, 1.0, 0.0, 0.0, 1.0).is_err());
    assert!(BoundParams::new(1, 1, 1.0, 0.0, 1.0, 0.0).is_err());
    assert!(params(1, 1, 1.0, 0.0, 1.0, 6.0).advisories().len() == 1);
    assert!(params(1, 1, 1.0, 0.0, 1.0, 5.0).advisories().is_empty());
}

#[test]
fn pstar_hand_solution() {
    // δ/n = 1 and ερ² = 1
    let pr = params(10, 3, 1.0, 10.0, 1.0, 1.0);
    let ps = thm1_pstar(&pr).unwrap();
    assert!((ps.p - (2f64.sqrt() - 1.0)).abs() <= 1e-15);
    assert!((ps.p - pstar_bisection(1.0, 1.0)).abs() <= 1e-12);
    assert!(!ps.degenerate);
}

#[test]
fn pstar_small_when_code_term_dominates() {
    let pr = params(1, 2, 1.0, 1e6, 1.0, 1.0);
    let p = thm1_pstar(&pr).unwrap().p;
    assert!(p <= 0.01);
    assert!((p - pstar_bisection(1e6, 1.0)).abs() <= 1e-12);
}

#[test]
fn pstar_degenerate_at_zero_delta() {
    let ps = thm1_pstar(&params(64, 2, 1.0, 0.0, 1.0, 0.3)).unwrap();
    assert_eq!(ps.p, 0.5);
    assert!(ps.degenerate);
}

#[test]
fn cor1_examples() {
    let pr = params(256, 3, 1.0, 0.7, 2.0, 0.05);
    let half = cor1_bound(0.5, &pr).unwrap().distortion_bound;
    assert!(rel(half, 0.7 / 768.0 + 4.0 * 0.05) <= 1e-14);

    let grid: Vec<f64> = (1..10_000).map(|k| k as f64 / 10_000.0).collect();
    let vals: Vec<f64> = grid.iter().map(|&p| cor1_bound(p, &pr).unwrap().distortion_bound).collect();
    assert!((grid[grid_argmin(&vals)] - 0.5).abs() <= 1e-4 + 1e-12);

    let b1 = params(50, 1, 1.0, 0.3, 1.0, 0.2);
    for p in [0.1, 0.3, 0.77] {
        let v = 4.0 * p * (1.0 - p);
        let expect = 0.3 / (50.0 * v) + 0.2 / v;
        assert!(rel(cor1_bound(p, &b1).unwrap().distortion_bound, expect) <= 1e-14);
    }
}

#[test]
fn theta1_examples() {
    assert_eq!(theta1_closed(0.3, 0.7, 4).unwrap(), 0.0);
    assert_eq!(theta1_closed(0.0, 0.0, 5).unwrap(), 1.0);
    let e = theta1_bruteforce(0.3, 0.3, 2).unwrap();
    assert!((theta1_closed(0.3, 0.3, 2).unwrap() - e.tv_at_extremes).abs() <= 1e-14);
    for (q0, q1) in [(0.2, 0.5), (0.9, 0.05), (0.0, 1.0)] {
        let e = theta1_bruteforce(q0, q1, 1).unwrap();
        let expect = (q0 - (1.0 - q1)).abs();
        assert!((e.tv_at_extremes - expect).abs() <= 1e-15);
        assert!((e.sup_over_all_pairs - expect).abs() <= 1e-15);
    }
    let e = theta1_bruteforce(0.25, 0.75, 6).unwrap();
    assert!(e.tv_at_extremes.abs() <= 1e-15 && e.sup_over_all_pairs.abs() <= 1e-15);
    assert!(theta1_bruteforce(0.3, 0.3, MAX_ENUMERATION_FRAMES + 1).is_err());
    assert!(theta1_closed(1.2, 0.3, 2).is_err());
}

#[test]
fn theta1_grid_against_enumeration() {
    for b in 1..=8 {
        for i in 1..=19 {
            for j in 1..=19 {
                let (q0, q1) = (i as f64 * 0.05, j as f64 * 0.05);
                let closed = theta1_closed(q0, q1, b).unwrap();
                let e = theta1_bruteforce(q0, q1, b).unwrap();
                assert!((closed - e.tv_at_extremes).abs() <= 1e-12, "B={b} q0={q0} q1={q1}");
                assert!(e.sup_over_all_pairs >= e.tv_at_extremes - 1e-12);
                assert!((0.0..=1.0).contains(&closed));
                if b <= 4 {
                    assert!((theta1_all_pairs(q0, q1, b) - e.sup_over_all_pairs).abs() <= 1e-12);
                    let zeros = vec![0u8; b];
                    let ones = vec![1u8; b];
                    assert!((product_kernel_tv(q0, q1, &zeros, &ones) - closed).abs() <= 1e-12);
                }
            }
        }
    }
}

#[test]
fn theta1_supremum_can_exceed_extreme_pair() {
    let (q0, q1, b) = (0.05, 0.1, 3);
    let e = theta1_bruteforce(q0, q1, b).unwrap();
    let all = theta1_all_pairs(q0, q1, b);
    assert!((e.sup_over_all_pairs - all).abs() <= 1e-12);
    assert!((e.tv_at_extremes - theta1_closed(q0, q1, b).unwrap()).abs() <= 1e-12);
    assert!(all > e.tv_at_extremes + 1e-3, "{all} vs {}", e.tv_at_extremes);
    // d′ = (0,0,1), d″ = (1,1,0)
    let mixed = product_kernel_tv(q0, q1, &[0, 0, 1], &[1, 1, 0]);
    assert!(mixed > e.tv_at_extremes + 1e-3);
}

#[test]
fn thm2_examples() {
    let pr = params(16384, 2, 1.0, 0.1, 1.0, 0.2);
    let rep = thm2_bound(&inframe(0.4, 0.6), &pr).unwrap();
    let expect = 1.0 - (2f64.powi(2) + 1.0) * (-16384.0 * 0.04 / 32.0f64).exp();
    assert!((rep.prob_lower_raw - expect).abs() <= 1e-15);

    let near_one = thm2_bound(&inframe(1e-9, 1e-9), &pr).unwrap();
    assert!(near_one.prob_lower_raw < 0.0);
    assert_eq!(near_one.prob_lower_clamped, 0.0);
    assert!(near_one.is_vacuous());

    let a = thm2_bound(&inframe(0.2, 0.4), &pr).unwrap().distortion_bound;
    let b = thm1_bound(1.0 / 3.0, &pr).unwrap().distortion_bound;
    assert!(rel(a, b) <= 1e-15);

    assert!(thm2_bound(&inframe(0.0, 0.4), &pr).is_err());
    let out = MarkovMaskSpec::new(0.2, 0.2, Orientation::OutOfFrame).unwrap();
    assert!(thm2_bound(&out, &pr).is_err());
}

#[test]
fn mn_examples() {
    assert_eq!(mn_factor(0.0, 17).unwrap(), 1.0);
    assert!((mn_factor(0.5, 3).unwrap() - 1.75).abs() <= 1e-15);
    assert!(mn_factor(1.0, 3).is_err());
    let mut rng = test_rng(40);
    for _ in 0..200 {
        let t: f64 = rng.random_range(0.0..0.999);
        let n: usize = rng.random_range(1..2000);
        let m = mn_factor(t, n).unwrap();
        assert!((m - geometric_sum(t, n)).abs() <= 1e-12 * m.max(1.0));
        assert!(m <= 1.0 / (1.0 - t) + 1e-12);
    }
}

#[test]
fn lambda_examples() {
    let (lo, hi) = lambda_extremes(&lambda_matrix(0.0, 7).unwrap()).unwrap();
    assert!((lo - 1.0).abs() <= 1e-13 && (hi - 1.0).abs() <= 1e-13);
    for a in [0.1, 0.5, 0.9] {
        let (lo, hi) = lambda_extremes(&lambda_matrix(a, 2).unwrap()).unwrap();
        assert!((lo - (1.0 - a)).abs() <= 1e-13 && (hi - (1.0 + a)).abs() <= 1e-13);
    }
    let m = lambda_matrix(0.3, 6).unwrap();
    let (lo, hi) = lambda_extremes(&m).unwrap();
    let t = toeplitz(0.3, 6);
    assert!((lo - bisect_eigenvalue(&t, 0)).abs() <= 1e-9);
    assert!((hi - bisect_eigenvalue(&t, 5)).abs() <= 1e-9);
    let all = symmetric_eigenvalues(m.entries().to_vec(), 6).unwrap();
    for (k, v) in all.iter().enumerate() {
        assert!((v - bisect_eigenvalue(&t, k)).abs() <= 1e-9);
    }
    assert!(lambda_matrix(1.0, 3).is_err());
    assert!(lambda_matrix(-0.1, 3).is_err());
    assert!(symmetric_eigenvalues(vec![1.0, 2.0, 3.0, 1.0], 2).is_err());
}

#[test]
fn lambda_matrix_structure() {
    let m = lambda_matrix(0.4, 5).unwrap();
    for i in 0..5 {
        assert_eq!(m.get(i, i), 1.0);
        for k in 0..5 {
            assert_eq!(m.get(i, k), m.get(k, i));
            assert!(m.get(i, k) > 0.0 && m.get(i, k) <= 1.0);
            assert!((m.get(i, k) - 0.4f64.powi((i as i32 - k as i32).abs())).abs() <= 1e-16);
        }
    }
}

#[test]
fn gershgorin_examples_and_sandwich() {
    assert_eq!(gershgorin_bounds(0.0).unwrap(), (1.0, 1.0));
    let (lo, hi) = gershgorin_bounds(0.2).unwrap();
    assert!((lo - 0.5).abs() <= 1e-15 && (hi - 1.5).abs() <= 1e-15);
    for k in 0..=16 {
        let a = k as f64 * 0.02;
        let (glo, ghi) = gershgorin_bounds(a).unwrap();
        for b in 2..=16 {
            let (lo, hi) = lambda_extremes(&lambda_matrix(a, b).unwrap()).unwrap();
            assert!(glo <= lo + 1e-12 && lo <= hi && hi <= ghi + 1e-12, "α={a} B={b}");
        }
    }
}

#[test]
fn thm3_examples() {
    let pr = params(2048, 2, 2.0, 0.3, 1.0, 0.1);
    for p in [0.1, 0.37, 0.5, 0.8] {
        let a = thm3_bound(p, 0.0, &pr).unwrap();
        let b = thm1_bound(p, &pr).unwrap();
        assert_eq!(a.distortion_bound, b.distortion_bound);
        assert_eq!(a.prob_lower_raw, b.prob_lower_raw);
    }
    let base = thm1_bound(0.4, &pr).unwrap().distortion_bound;
    let near = thm3_bound(0.4, 0.01, &pr).unwrap().distortion_bound;
    let slope = (thm3_bound(0.4, 0.02, &pr).unwrap().distortion_bound - near) / 0.01;
    assert!((near - base).abs() <= 2.0 * slope.abs() * 0.01 + 1e-12);

    let (n, delta, eps) = (2048.0, 0.3, 0.1);
    let hand = (1.5 * 0.5 + 0.5 * 2.0) / (0.5 * 0.5) * delta / (2.0 * n) + eps / (0.5 * 0.25);
    assert!(rel(thm3_bound(0.5, 0.5, &pr).unwrap().distortion_bound, hand) <= 1e-13);
    assert!(thm3_bound(0.5, 1.0, &pr).is_err());
}

#[test]
fn cor2_examples() {
    let pr = params(1000, 4, 1.0, 0.2, 1.0, 0.3);
    for p in [0.2, 0.5, 0.7] {
        let lit = cor2_bound(p, 0.0, &pr, Cor2Mode::PaperLiteral).unwrap();
        let der = cor2_bound(p, 0.0, &pr, Cor2Mode::ProofDerived).unwrap();
        let coef = ((1.0 - p) + p * 4.0) / (1.0 - p);
        let code = coef * 0.2 / 4000.0;
        assert!(rel(der.distortion_bound, code + 0.3 / (p * (1.0 - p))) <= 1e-14);
        assert!(rel(lit.distortion_bound, code + 0.7 / (p * (1.0 - p))) <= 1e-14);
        assert_eq!(lit.theorem, TheoremTag::Cor2PaperLiteral);
    }
    for a in [0.05, 0.2, 0.3] {
        let lit = cor2_bound(0.4, a, &pr, Cor2Mode::PaperLiteral).unwrap().distortion_bound;
        let der = cor2_bound(0.4, a, &pr, Cor2Mode::ProofDerived).unwrap().distortion_bound;
        assert!((lit - der).abs() > 1e-6);
    }
    assert!(matches!(cor2_bound(0.4, 1.0 / 3.0, &pr, Cor2Mode::ProofDerived), Err(Error::Inapplicable(_))));
}

#[test]
fn cor2_dominates_thm3() {
    for b in 1..=16 {
        let pr = params(4096, b, 1.5, 0.4, 1.0, 0.2);
        for k in 1..33 {
            let a = k as f64 * 0.01;
            for p in [0.05, 0.3, 0.5, 0.9] {
                let der = cor2_bound(p, a, &pr, Cor2Mode::ProofDerived).unwrap().distortion_bound;
                let exact = thm3_bound(p, a, &pr).unwrap().distortion_bound;
                assert!(der >= exact * (1.0 - 1e-12), "B={b} α={a} p={p}");
            }
        }
    }
}

#[test]
fn expected_uj_examples() {
    let mu = [0.2, -0.5, 0.1];
    assert_eq!(expected_uj(UjModel::Iid01, 0.3, None, &[0.0; 3]).unwrap(), 0.0);
    let s: f64 = mu.iter().sum();
    assert!((expected_uj(UjModel::Iid01, 1.0, None, &mu).unwrap() - s * s).abs() <= 1e-15);
    assert!(expected_uj(UjModel::OutFrameMarkov, 0.3, None, &mu).is_err());
}

/// Monte Carlo of `(Σᵢ Dᵢμᵢ)²` with masks drawn directly from the model.
fn mc_uj(model: UjModel, p: f64, a: f64, mu: &[f64], draws: usize, seed: u64) -> (f64, f64) {
    let mut rng = test_rng(seed);
    // out-of-frame: chain with q0 = p(1−α), q1 = (1−p)(1−α)
    let (q0, q1) = (p * (1.0 - a), (1.0 - p) * (1.0 - a));
    let samples: Vec<f64> = (0..draws)
        .map(|_| {
            let mut state = rng.random_bool(p);
            let mut s = 0.0;
            for &m in mu {
                let d = match model {
                    UjModel::Iid01 => f64::from(u8::from(rng.random_bool(p))),
                    UjModel::SignedPm1 => {
                        if rng.random_bool(p) {
                            1.0
                        } else {
                            -1.0
                        }
                    }
                    UjModel::OutFrameMarkov => {
                        let d = f64::from(u8::from(state));
                        state = if state { !rng.random_bool(q1) } else { rng.random_bool(q0) };
                        d
                    }
                };
                s += d * m;
            }
            s * s
        })
        .collect();
    mean_se(&samples)
}

#[test]
fn expected_uj_monte_carlo() {
    let mut rng = test_rng(41);
    for (k, model) in [UjModel::Iid01, UjModel::SignedPm1, UjModel::OutFrameMarkov].into_iter().enumerate() {
        for t in 0..3 {
            let b = rng.random_range(1..=8);
            let mu: Vec<f64> = (0..b).map(|_| rng.random_range(-1.0..1.0)).collect();
            let p = rng.random_range(0.1..0.9);
            let a = rng.random_range(0.0..0.6);
            let theory = expected_uj(model, p, Some(a), &mu).unwrap();
            let (mean, se) = mc_uj(model, p, a, &mu, 100_000, 1000 + 10 * k as u64 + t);
            assert!((mean - theory).abs() <= 4.0 * se, "{model:?}: {mean} vs {theory} (se {se})");
        }
    }
}

#[test]
fn uj_and_tails() {
    assert_eq!(uj_upper_bound(1, 1.0), 1.0);
    assert_eq!(uj_upper_bound(3, 2.0), 36.0);
    // μ = 1 with D = 1 attains B²ρ² for B = 1
    assert_eq!(expected_uj(UjModel::Iid01, 1.0, None, &[1.0]).unwrap(), 1.0);

    let mut last = 1.0;
    for n in [10, 100, 1000] {
        let t = hoeffding_tail(n, 2, 0.1).unwrap();
        assert!(t < last);
        last = t;
    }
    let mut last = 0.0;
    for b in [1, 2, 4, 8] {
        let t = hoeffding_tail(100, b, 0.1).unwrap();
        assert!(t > last);
        last = t;
    }
    assert!(hoeffding_tail(0, 2, 0.1).is_err());

    let (n, c, t) = (500usize, markov_lipschitz(2, 1.0), 40.0);
    assert_eq!(c, 4.0);
    let direct = 2.0 * (-t * t / (2.0 * n as f64 * c * c)).exp();
    assert!((markov_concentration_tail(n, c, 0.0, t).unwrap() - direct).abs() <= 1e-15);
    assert!(markov_concentration_tail(n, c, 1.0, t).is_err());
    assert!(markov_concentration_tail(n, c, 0.5, t).unwrap() > direct);
}

#[test]
fn report_json_shape() {
    let rep = thm1_bound(0.5, &params(4096, 2, 3.0, 0.01, 1.0, 0.2)).unwrap();
    let v = serde_json::to_value(&rep).unwrap();
    assert_eq!(v["theorem"], "thm1");
    for key in ["params", "distortion_bound", "prob_lower_raw", "prob_lower_clamped"] {
        assert!(v.get(key).is_some());
    }
    assert_eq!(v["params"]["B"], 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pstar_matches_oracles(pr in arb_params()) {
        let ps = thm1_pstar(&pr).unwrap().p;
        prop_assert!(ps > 0.0 && ps < 0.5);
        let k = pr.delta / pr.n as f64;
        let a = pr.epsilon * pr.rho * pr.rho;
        prop_assert!((ps - pstar_bisection(k, a)).abs() <= 1e-10);
        let m = 20_000;
        let grid: Vec<f64> = (1..m).map(|i| i as f64 / m as f64).collect();
        let vals: Vec<f64> = grid.iter().map(|&p| thm1_bound(p, &pr).unwrap().distortion_bound).collect();
        prop_assert!((grid[grid_argmin(&vals)] - ps).abs() <= 1.0 / m as f64 + 1e-12);
    }

    #[test]
    fn cor1_symmetric(pr in arb_params(), k in 1u32..4096) {
        // dyadic grid, so 1 − p is exact
        let p = f64::from(k) / 4096.0;
        let a = cor1_bound(p, &pr).unwrap().distortion_bound;
        let b = cor1_bound(1.0 - p, &pr).unwrap().distortion_bound;
        prop_assert!(rel(a, b) <= 1e-15 || (a - b).abs() <= 1e-15);
    }

    #[test]
    fn thm3_collapses_at_zero_alpha(pr in arb_params(), p in 0.001f64..0.999) {
        let a = thm3_bound(p, 0.0, &pr).unwrap().distortion_bound;
        let b = thm1_bound(p, &pr).unwrap().distortion_bound;
        prop_assert!(rel(a, b) <= 1e-14);
    }

    #[test]
    fn bound_monotone_in_eps_and_delta(pr in arb_params(), p in 0.01f64..0.99, f in 1.01f64..3.0) {
        let base = thm1_bound(p, &pr).unwrap().distortion_bound;
        let more_eps = BoundParams { epsilon: pr.epsilon * f, ..pr };
        let more_delta = BoundParams { delta: pr.delta * f, ..pr };
        prop_assert!(thm1_bound(p, &more_eps).unwrap().distortion_bound > base);
        prop_assert!(thm1_bound(p, &more_delta).unwrap().distortion_bound > base);
    }

    #[test]
    fn uj_iid_equals_outframe_memoryless(p in 0.0f64..=1.0, mu in prop::collection::vec(-2.0f64..2.0, 1..12)) {
        let a = expected_uj(UjModel::Iid01, p, None, &mu).unwrap();
        let b = expected_uj(UjModel::OutFrameMarkov, p, Some(0.0), &mu).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn quadratic_form_matches_dense(a in 0.0f64..0.95, mu in prop::collection::vec(-2.0f64..2.0, 1..12)) {
        let m = lambda_matrix(a, mu.len()).unwrap();
        let t = toeplitz(a, mu.len());
        let dense: f64 = (0..mu.len()).map(|i| (0..mu.len()).map(|k| mu[i] * t[i][k] * mu[k]).sum::<f64>()).sum();
        prop_assert!((m.quadratic_form(&mu) - dense).abs() <= 1e-12 * (1.0 + dense.abs()));
    }

    #[test]
    fn theta1_in_unit_interval(q0 in 0.0f64..=1.0, q1 in 0.0f64..=1.0, b in 1usize..40) {
        let t = theta1_closed(q0, q1, b).unwrap();
        prop_assert!((0.0..=1.0).contains(&t));
    }

    #[test]
    fn jacobi_matches_bisection(a in 0.0f64..0.9, b in 1usize..20) {
        let (lo, hi) = lambda_extremes(&lambda_matrix(a, b).unwrap()).unwrap();
        let t = toeplitz(a, b);
        prop_assert!((lo - bisect_eigenvalue(&t, 0)).abs() <= 1e-9);
        prop_assert!((hi - bisect_eigenvalue(&t, b - 1)).abs() <= 1e-9);
    }
}
