//! Cross-frame correlation matrix `Λ = [α^{|i−k|}]` and its spectrum.

use serde::Serialize;

use crate::error::{invalid, Error, Result};

/// Convergence threshold on the off-diagonal Frobenius norm.
pub const JACOBI_TOLERANCE: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Symmetric Toeplitz matrix with unit diagonal, row-major.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorrelationMatrix {
    alpha: f64,
    size: usize,
    entries: Vec<f64>,
}

impl CorrelationMatrix {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, k: usize) -> f64 {
        self.entries[i * self.size + k]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// `μᵀΛμ`.
    pub fn quadratic_form(&self, mu: &[f64]) -> f64 {
        assert_eq!(mu.len(), self.size, "vector length must match Λ");
        mu.iter()
            .enumerate()
            .map(|(i, &mi)| {
                let row = &self.entries[i * self.size..(i + 1) * self.size];
                mi * row.iter().zip(mu).map(|(l, m)| l * m).sum::<f64>()
            })
            .sum()
    }
}

/// `Λ_{ik} = α^{|i−k|}` for `0 ≤ α < 1`.
pub fn lambda_matrix(alpha: f64, b: usize) -> Result<CorrelationMatrix> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(invalid(format!("alpha must lie in [0,1), got {alpha}")));
    }
    if b == 0 {
        return Err(invalid("B must be positive"));
    }
    let mut entries = vec![0.0; b * b];
    for i in 0..b {
        for k in 0..b {
            entries[i * b + k] = alpha.powi(i.abs_diff(k) as i32);
        }
    }
    Ok(CorrelationMatrix { alpha, size: b, entries })
}

/// `(λ_min, λ_max)` of `Λ`.
pub fn lambda_extremes(m: &CorrelationMatrix) -> Result<(f64, f64)> {
    let eig = symmetric_eigenvalues(m.entries.clone(), m.size)?;
    Ok((eig[0], eig[m.size - 1]))
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
///
/// Each sweep visits every `(p, q)` pair above the diagonal once. Iteration
/// stops once the off-diagonal Frobenius norm is at most
/// [`JACOBI_TOLERANCE`]; exceeding [`JACOBI_MAX_SWEEPS`] is an error.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>> {
    if a.len() != n * n {
        return Err(invalid(format!("expected {n}x{n} entries, got {}", a.len())));
    }
    for i in 0..n {
        for k in (i + 1)..n {
            if (a[i * n + k] - a[k * n + i]).abs() > 1e-12 * (1.0 + a[i * n + k].abs()) {
                return Err(invalid("matrix is not symmetric"));
            }
        }
    }
    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for k in 0..n {
                if i != k {
                    s += a[i * n + k] * a[i * n + k];
                }
            }
        }
        s.sqrt()
    };

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_norm(&a) <= JACOBI_TOLERANCE {
            let mut d: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
            d.sort_by(f64::total_cmp);
            return Ok(d);
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let new_rp = c * arp - s * arq;
                    let new_rq = s * arp + c * arq;
                    a[r * n + p] = new_rp;
                    a[p * n + r] = new_rp;
                    a[r * n + q] = new_rq;
                    a[q * n + r] = new_rq;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    Err(Error::NonConvergence { sweeps: JACOBI_MAX_SWEEPS, off_norm: off_norm(&a) })
}

/// Disc bounds `((1−3α)/(1−α), (1+α)/(1−α))` on the spectrum of `Λ`.
///
/// The lower end is non-positive for `α ≥ 1/3`.
pub fn gershgorin_bounds(alpha: f64) -> Result<(f64, f64)> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(invalid(format!("alpha must lie in [0,1), got {alpha}")));
    }
    Ok(((1.0 - 3.0 * alpha) / (1.0 - alpha), (1.0 + alpha) / (1.0 - alpha)))
}
