//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls into the evaluator being checked; each oracle takes
//! a different route to the same number.

#![allow(dead_code, clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scimask::model::{MaskCube, SignalCube};

pub fn test_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_cube<R: Rng>(rng: &mut R, b: usize, n: usize, rho: f64) -> SignalCube {
    let half = rho / 2.0;
    let data = (0..b * n).map(|_| rng.random_range(-half..=half)).collect();
    SignalCube::from_flat(b, n, rho, data).unwrap()
}

pub fn random_binary_masks<R: Rng>(rng: &mut R, b: usize, n: usize) -> MaskCube {
    let frames = (0..b).map(|_| (0..n).map(|_| i8::from(rng.random_bool(0.5))).collect()).collect();
    MaskCube::binary(frames).unwrap()
}

/// Materializes `H = [D_1, …, D_B]` as an `n × nB` row-major matrix.
pub fn dense_h(masks: &MaskCube) -> Vec<Vec<f64>> {
    let (b, n) = (masks.num_frames(), masks.frame_len());
    let mut h = vec![vec![0.0; n * b]; n];
    for (i, frame) in masks.frames().enumerate() {
        for (j, &d) in frame.iter().enumerate() {
            h[j][i * n + j] = f64::from(d);
        }
    }
    h
}

pub fn matvec(h: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    h.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

/// `(1/nB)Σ(x − x̂)²` entry by entry through the frame accessors.
pub fn naive_distortion(x: &SignalCube, xhat: &SignalCube) -> f64 {
    let mut total = 0.0;
    let mut count = 0usize;
    for i in 0..x.num_frames() {
        for j in 0..x.frame_len() {
            let d = x.frame(i)[j] - xhat.frame(i)[j];
            total += d * d;
            count += 1;
        }
    }
    total / count as f64
}

/// `‖y − Hc‖²` through the dense matrix.
pub fn dense_objective(h: &[Vec<f64>], y: &[f64], c: &[f64]) -> f64 {
    matvec(h, c).iter().zip(y).map(|(a, b)| (b - a) * (b - a)).sum()
}

pub fn mat2_mul(a: [[f64; 2]; 2], b: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    let mut c = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

/// `P^k` by repeated multiplication.
pub fn mat2_pow(p: [[f64; 2]; 2], k: u32) -> [[f64; 2]; 2] {
    let mut acc = [[1.0, 0.0], [0.0, 1.0]];
    for _ in 0..k {
        acc = mat2_mul(acc, p);
    }
    acc
}

/// Exact rational for a finite f64.
pub fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap()
}

/// `e^x` for rational `x ≥ 0` by Taylor series, truncated once terms fall
/// below `2^-200`.
pub fn exp_rational(x: &BigRational) -> BigRational {
    let tiny = BigRational::new(BigInt::one(), BigInt::one() << 200);
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    let mut k = 0u32;
    loop {
        sum += &term;
        k += 1;
        term = term * x / BigRational::from_integer(BigInt::from(k));
        if term < tiny && k > 2 {
            break;
        }
    }
    sum
}

/// `1 − 2^a · e^{−x}` with `a` integer, in exact arithmetic.
pub fn one_minus_pow2_exp_neg(a: u32, x: &BigRational) -> f64 {
    let pow = BigRational::from_integer(BigInt::one() << a);
    (BigRational::one() - pow / exp_rational(x)).to_f64().unwrap()
}

/// Number of eigenvalues of symmetric `a` below `sigma`, by counting
/// negative pivots of an LDLᵀ factorization of `a − σI` (Sylvester inertia).
pub fn count_below(a: &[Vec<f64>], sigma: f64) -> usize {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= sigma;
    }
    let mut negatives = 0;
    for k in 0..n {
        let mut pivot = m[k][k];
        if pivot == 0.0 {
            pivot = -1e-300;
        }
        if pivot < 0.0 {
            negatives += 1;
        }
        for i in (k + 1)..n {
            let f = m[i][k] / pivot;
            for j in (k + 1)..n {
                m[i][j] -= f * m[k][j];
            }
        }
    }
    negatives
}

/// `k`-th smallest eigenvalue (0-based) by bisection on the inertia count.
pub fn bisect_eigenvalue(a: &[Vec<f64>], k: usize) -> f64 {
    let radius = a.iter().map(|r| r.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max);
    let (mut lo, mut hi) = (-radius - 1.0, radius + 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if count_below(a, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn toeplitz(alpha: f64, b: usize) -> Vec<Vec<f64>> {
    (0..b).map(|i| (0..b).map(|k| alpha.powi((i as i32 - k as i32).abs())).collect()).collect()
}

/// TV between the `B`-fold product kernels started at `d′` and `d″`,
/// enumerating all `2^B` outcomes.
pub fn product_kernel_tv(q0: f64, q1: f64, start_a: &[u8], start_b: &[u8]) -> f64 {
    let b = start_a.len();
    let step = |from: u8, to: u8| -> f64 {
        match (from, to) {
            (0, 0) => 1.0 - q0,
            (0, _) => q0,
            (_, 0) => q1,
            _ => 1.0 - q1,
        }
    };
    let mut total = 0.0;
    for outcome in 0..(1usize << b) {
        let mut pa = 1.0;
        let mut pb = 1.0;
        for i in 0..b {
            let o = ((outcome >> i) & 1) as u8;
            pa *= step(start_a[i], o);
            pb *= step(start_b[i], o);
        }
        total += (pa - pb).abs();
    }
    0.5 * total
}

/// `max` of [`product_kernel_tv`] over every ordered pair of start states.
pub fn theta1_all_pairs(q0: f64, q1: f64, b: usize) -> f64 {
    let state = |s: usize| -> Vec<u8> { (0..b).map(|i| ((s >> i) & 1) as u8).collect() };
    let mut best = 0.0f64;
    for s in 0..(1usize << b) {
        for t in 0..(1usize << b) {
            best = best.max(product_kernel_tv(q0, q1, &state(s), &state(t)));
        }
    }
    best
}

/// Sign of the derivative of the binary-mask bound is the sign of
/// `g(p) = (δ/n)p² − ερ²(1 − 2p)`; root in `(0, 1/2]` by bisection.
pub fn pstar_bisection(delta_over_n: f64, eps_rho2: f64) -> f64 {
    let g = |p: f64| delta_over_n * p * p - eps_rho2 * (1.0 - 2.0 * p);
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Index of the smallest value; lowest index on ties.
pub fn grid_argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (k, v) in values.iter().enumerate() {
        if *v < values[best] {
            best = k;
        }
    }
    best
}

/// `Σ_{k<n} θᵏ` term by term.
pub fn geometric_sum(theta: f64, n: usize) -> f64 {
    let mut total = 0.0;
    let mut term = 1.0;
    for _ in 0..n {
        total += term;
        term *= theta;
    }
    total
}

/// Mean and standard error of a sample.
pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Binomial standard error of a frequency estimate.
pub fn binomial_se(p: f64, n: usize) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}
