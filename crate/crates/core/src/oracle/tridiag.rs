//! Symmetric tridiagonal eigenproblems: Sturm-sequence bisection for
//! eigenvalues and inverse iteration for eigenvectors.
//!
//! A matrix is given by its diagonal `d[0..n]` and off-diagonal `e[0..n-1]`.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::sqrt;
use crate::{Error, Result};

fn check_shape(diag: &[f64], off: &[f64]) -> Result<()> {
    if diag.is_empty() || off.len() + 1 != diag.len() {
        return Err(Error::Domain {
            what: "tridiagonal shape",
            value: diag.len() as f64,
        });
    }
    Ok(())
}

/// Smallest admissible pivot in the Sturm recurrence.
fn pivot_floor(off: &[f64]) -> f64 {
    let emax = off.iter().fold(0.0_f64, |m, e| m.max(e * e));
    f64::MIN_POSITIVE.max(emax * f64::EPSILON * f64::EPSILON)
}

/// Number of eigenvalues strictly below `x`.
pub fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let floor = pivot_floor(off);
    let mut count = 0;
    let mut q = diag[0] - x;
    for i in 0.. {
        if q.abs() < floor {
            q = -floor;
        }
        if q < 0.0 {
            count += 1;
        }
        if i + 1 == diag.len() {
            break;
        }
        q = diag[i + 1] - x - off[i] * off[i] / q;
    }
    count
}

/// Interval containing the whole spectrum.
pub fn gershgorin(diag: &[f64], off: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (i, &d) in diag.iter().enumerate() {
        let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let right = off.get(i).map_or(0.0, |e| e.abs());
        lo = lo.min(d - left - right);
        hi = hi.max(d + left + right);
    }
    (lo, hi)
}

/// The `k`-th smallest eigenvalue (from 0), bisected to a relative width of
/// `1e-12` (absolute `1e-12` near zero).
pub fn eigenvalue(diag: &[f64], off: &[f64], k: usize) -> Result<f64> {
    check_shape(diag, off)?;
    if k >= diag.len() {
        return Err(Error::Domain {
            what: "eigenvalue index",
            value: k as f64,
        });
    }
    let (mut lo, mut hi) = gershgorin(diag, off);
    let pad = f64::EPSILON * lo.abs().max(hi.abs()).max(1.0);
    lo -= pad;
    hi += pad;
    while hi - lo > 1e-12 * lo.abs().max(hi.abs()).max(1.0) {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(diag, off, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(lo + 0.5 * (hi - lo))
}

/// LU factors of a tridiagonal matrix with partial pivoting.
struct TridiagLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl TridiagLu {
    fn factor(diag: &[f64], off: &[f64], shift: f64) -> Self {
        let n = diag.len();
        let mut dl = off.to_vec();
        let mut d: Vec<f64> = diag.iter().map(|x| x - shift).collect();
        let mut du = off.to_vec();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        let tiny = f64::EPSILON * diag.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
        for i in 0..n - 1 {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        Self {
            dl,
            d,
            du,
            du2,
            swapped,
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = b.len();
        for i in 0..n - 1 {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = sqrt(v.iter().map(|x| x * x).sum());
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

/// Unit eigenvector for the (accurate) eigenvalue `lambda`, by inverse
/// iteration.
pub fn eigenvector(diag: &[f64], off: &[f64], lambda: f64) -> Result<Vec<f64>> {
    check_shape(diag, off)?;
    let n = diag.len();
    let lu = TridiagLu::factor(diag, off, lambda);
    // Deterministic start vector with components of both signs.
    let mut x: Vec<f64> = (0..n)
        .map(|i| 1.0 + 0.5 * crate::math::sin(1.0 + i as f64 * 0.7548776662466927))
        .collect();
    normalize(&mut x);
    for _ in 0..10 {
        let mut y = x.clone();
        lu.solve(&mut y);
        if !y.iter().all(|v| v.is_finite()) || normalize(&mut y) == 0.0 {
            return Err(Error::Stagnation);
        }
        let dot: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let sign = if dot < 0.0 { -1.0 } else { 1.0 };
        let change = x
            .iter()
            .zip(&y)
            .fold(0.0_f64, |m, (a, b)| m.max((a - sign * b).abs()));
        x = y;
        if change <= 1e-10 {
            return Ok(x);
        }
    }
    Err(Error::Stagnation)
}

/// `k`-th eigenpair.
pub fn eigen_tridiag(diag: &[f64], off: &[f64], k: usize) -> Result<(f64, Vec<f64>)> {
    let lambda = eigenvalue(diag, off, k)?;
    Ok((lambda, eigenvector(diag, off, lambda)?))
}

/// Sign changes of `v`, skipping components below `1e-10 max|v|`.
pub fn sign_changes(v: &[f64]) -> usize {
    let cutoff = 1e-10 * v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let mut last = 0.0_f64;
    let mut count = 0;
    for &x in v {
        if x.abs() <= cutoff {
            continue;
        }
        if last != 0.0 && (x < 0.0) != (last < 0.0) {
            count += 1;
        }
        last = x;
    }
    count
}
