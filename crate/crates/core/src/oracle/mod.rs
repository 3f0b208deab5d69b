//! Finite-difference solution of the approximated radial equation
//!
//! ```text
//! -chi'' + U(r; E) chi = lambda chi,     lambda = E^2 - M^2
//! U(r; E) = 2 (M + E) V'(r) + 4 l(l+1) delta^2 s / (1-s)^2
//! ```
//!
//! on a uniform grid with Dirichlet ends. Because `U` depends on `E`, the
//! energy is found self-consistently: `E = sign * sqrt(M^2 + lambda_k(E))`.
//!
//! The plain damped fixed-point iteration is tried first. Its map is not a
//! contraction for every state, so when it stalls, grows, or leaves the
//! physical window the solver falls back to bracketing a root of
//! `h(E) = lambda_k(E) - (E^2 - M^2)` on the half of `(-M, M)` selected by
//! the sign of the guess.

pub mod tridiag;

use alloc::vec::Vec;

use crate::math::{log2, sqrt};
use crate::potential::{derive_coefficients, shapes, ModelParams};
use crate::roots;
use crate::{Error, Result};

pub use tridiag::{eigen_tridiag, eigenvalue, eigenvector, sign_changes, sturm_count};

/// Damping factor of the fixed-point iteration.
pub const DAMPING: f64 = 0.5;
/// Iteration cap of the fixed-point iteration.
pub const MAX_ITERATIONS: usize = 200;
/// Stopping threshold on `|E_{i+1} - E_i|`.
pub const ENERGY_TOL: f64 = 1e-10;
/// Scan points per half-interval of the bracketing fallback.
const BRACKET_SCAN: usize = 81;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    /// Number of interior points.
    pub n_points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            r_min: 1e-6,
            r_max: 30.0,
            n_points: 4000,
        }
    }
}

impl GridSpec {
    pub fn new(r_min: f64, r_max: f64, n_points: usize) -> Result<Self> {
        let g = Self {
            r_min,
            r_max,
            n_points,
        };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        if !(self.r_min > 0.0) {
            return Err(Error::Domain {
                what: "r_min",
                value: self.r_min,
            });
        }
        if !(self.r_max > self.r_min) || !self.r_max.is_finite() {
            return Err(Error::Domain {
                what: "r_max",
                value: self.r_max,
            });
        }
        if self.n_points < 100 {
            return Err(Error::Domain {
                what: "grid points",
                value: self.n_points as f64,
            });
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        (self.r_max - self.r_min) / (self.n_points + 1) as f64
    }

    /// Interior grid points.
    pub fn points(&self) -> Vec<f64> {
        let h = self.spacing();
        (1..=self.n_points).map(|i| self.r_min + h * i as f64).collect()
    }

    /// Same interval with `factor` times as many points.
    pub fn refined(&self, factor: usize) -> Self {
        Self {
            n_points: self.n_points * factor,
            ..*self
        }
    }
}

/// How a self-consistent energy was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    Damped,
    Bracketed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub energy: f64,
    /// `lambda_k` at the converged energy.
    pub lambda: f64,
    /// Fixed-point steps, plus `h(E)` evaluations if the fallback ran.
    pub iterations: usize,
    pub node_count: usize,
    pub converged: bool,
    /// `lambda_k <= -M^2` blocked the iteration and no bracket was found.
    pub unphysical: bool,
    pub method: SolveMethod,
    /// `|E_{i+1} - E_i|` decreased monotonically after the fifth step of the
    /// damped iteration. Diagnostic only.
    pub monotone_contraction: bool,
}

/// Diagonal and off-diagonal of the discretized operator at energy `energy`.
pub fn hamiltonian(params: &ModelParams, l: u32, energy: f64, grid: &GridSpec) -> Result<(Vec<f64>, Vec<f64>)> {
    grid.validate()?;
    let c = derive_coefficients(params)?;
    let h = grid.spacing();
    let inv_h2 = 1.0 / (h * h);
    let coupling = 2.0 * (params.mass + energy);
    let barrier = 4.0 * f64::from(l) * f64::from(l + 1) * params.delta * params.delta;
    let diag = grid
        .points()
        .into_iter()
        .map(|r| {
            let (ratio, ratio_sq, centrifugal) = shapes(params.delta, r);
            2.0 * inv_h2 + coupling * (c.v014 * ratio_sq - c.v023 * ratio) + barrier * centrifugal
        })
        .collect();
    Ok((diag, alloc::vec![-inv_h2; grid.n_points - 1]))
}

/// `lambda_k(E)`, the `k`-th eigenvalue at fixed coupling energy.
pub fn lambda_k(params: &ModelParams, l: u32, k: usize, energy: f64, grid: &GridSpec) -> Result<f64> {
    let (d, e) = hamiltonian(params, l, energy, grid)?;
    eigenvalue(&d, &e, k)
}

fn finish(
    params: &ModelParams,
    l: u32,
    k: usize,
    energy: f64,
    grid: &GridSpec,
) -> Result<(f64, usize)> {
    let (d, e) = hamiltonian(params, l, energy, grid)?;
    let (lambda, v) = eigen_tridiag(&d, &e, k)?;
    Ok((lambda, sign_changes(&v)))
}

struct Damped {
    energy: f64,
    iterations: usize,
    converged: bool,
    unphysical: bool,
    monotone: bool,
}

fn damped_iteration(params: &ModelParams, l: u32, k: usize, guess: f64, grid: &GridSpec) -> Result<Damped> {
    let m = params.mass;
    let sign = if guess < 0.0 { -1.0 } else { 1.0 };
    let mut energy = guess;
    let mut steps: Vec<f64> = Vec::new();
    let mut out = Damped {
        energy,
        iterations: 0,
        converged: false,
        unphysical: false,
        monotone: true,
    };
    for i in 0..MAX_ITERATIONS {
        out.iterations = i + 1;
        let lambda = lambda_k(params, l, k, energy, grid)?;
        if !(lambda > -m * m) || !(lambda < 0.0) {
            out.unphysical = lambda <= -m * m;
            return Ok(out);
        }
        let raw = sign * sqrt(m * m + lambda);
        let next = energy + DAMPING * (raw - energy);
        let step = (next - energy).abs();
        energy = next;
        out.energy = energy;
        if step <= ENERGY_TOL {
            out.converged = true;
            return Ok(out);
        }
        if steps.len() >= 5 && step >= steps[steps.len() - 1] {
            out.monotone = false;
            // Three growing steps in a row: the map is expanding here.
            let n = steps.len();
            if steps[n - 1] >= steps[n - 2] && steps[n - 2] >= steps[n - 3] {
                return Ok(out);
            }
        }
        steps.push(step);
    }
    Ok(out)
}

fn bracketed(params: &ModelParams, l: u32, k: usize, guess: f64, grid: &GridSpec) -> Result<Option<(f64, usize)>> {
    let m = params.mass;
    let margin = 1e-9 * m;
    let (lo, hi) = if guess < 0.0 { (-m + margin, 0.0) } else { (0.0, m - margin) };
    let evals = core::cell::Cell::new(0usize);
    let h = |e: f64| {
        evals.set(evals.get() + 1);
        lambda_k(params, l, k, e, grid).ok().map(|lambda| lambda - (e * e - m * m))
    };
    let brackets = roots::scan_sign_changes(h, lo, hi, BRACKET_SCAN)?;
    let nearest = brackets.into_iter().min_by(|a, b| {
        let da = (0.5 * (a.0 + a.1) - guess).abs();
        let db = (0.5 * (b.0 + b.1) - guess).abs();
        da.partial_cmp(&db).unwrap_or(core::cmp::Ordering::Equal)
    });
    let Some((a, b)) = nearest else {
        return Ok(None);
    };
    let energy = bisect_to(&h, a, b, 1e-12)?;
    Ok(Some((energy, evals.get())))
}

/// Bisection stopped at width `tol`, which keeps the number of eigenvalue
/// solves bounded.
fn bisect_to<F: Fn(f64) -> Option<f64>>(f: &F, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let bad = |x| Error::Domain {
        what: "oracle bracket",
        value: x,
    };
    let fa0 = f(a).ok_or_else(|| bad(a))?;
    let mut negative_at_a = fa0 < 0.0;
    if fa0 == 0.0 {
        return Ok(a);
    }
    while b - a > tol {
        let mid = a + 0.5 * (b - a);
        let fm = f(mid).ok_or_else(|| bad(mid))?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == negative_at_a {
            a = mid;
            negative_at_a = fm < 0.0;
        } else {
            b = mid;
        }
    }
    Ok(a + 0.5 * (b - a))
}

/// Self-consistent energy of the `k`-node state with angular momentum `l`,
/// on the energy branch given by the sign of `guess`.
pub fn self_consistent_solve(
    params: &ModelParams,
    l: u32,
    k: usize,
    guess: f64,
    grid: &GridSpec,
) -> Result<OracleResult> {
    params.validate()?;
    grid.validate()?;
    if !(guess.abs() < params.mass) {
        return Err(Error::Domain {
            what: "energy guess",
            value: guess,
        });
    }
    if k >= grid.n_points {
        return Err(Error::Domain {
            what: "node count",
            value: k as f64,
        });
    }
    let damped = damped_iteration(params, l, k, guess, grid)?;
    let (energy, iterations, method) = if damped.converged {
        (damped.energy, damped.iterations, SolveMethod::Damped)
    } else {
        match bracketed(params, l, k, guess, grid)? {
            Some((e, evals)) => (e, damped.iterations + evals, SolveMethod::Bracketed),
            None => {
                return Ok(OracleResult {
                    energy: f64::NAN,
                    lambda: f64::NAN,
                    iterations: damped.iterations,
                    node_count: 0,
                    converged: false,
                    unphysical: true,
                    method: SolveMethod::Bracketed,
                    monotone_contraction: damped.monotone,
                })
            }
        }
    };
    let (lambda, node_count) = finish(params, l, k, energy, grid)?;
    Ok(OracleResult {
        energy,
        lambda,
        iterations,
        node_count,
        converged: true,
        unphysical: false,
        method,
        monotone_contraction: damped.monotone,
    })
}

/// Energies on three successively doubled grids and their extrapolation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolated {
    /// Extrapolated energy.
    pub energy: f64,
    /// Raw energies on `n`, `2n` and `4n` points.
    pub raw: [f64; 3],
    /// Observed convergence order `log2((E1-E2)/(E2-E3))`; `NaN` when the
    /// sequence is not monotonically converging.
    pub order: f64,
    /// Result on the finest grid.
    pub finest: OracleResult,
}

/// Runs [`self_consistent_solve`] on `grid`, `2 grid` and `4 grid` and
/// extrapolates with the observed order. The lower-order convergence of
/// `l = 0` states (the wave function behaves like `r^kappa` with
/// `kappa < 1` near the origin) makes plain grid refinement too slow.
pub fn extrapolated_solve(
    params: &ModelParams,
    l: u32,
    k: usize,
    guess: f64,
    grid: &GridSpec,
) -> Result<Option<Extrapolated>> {
    let mut raw = [0.0; 3];
    let mut finest = None;
    let mut g = guess;
    for (i, factor) in [1, 2, 4].into_iter().enumerate() {
        let res = self_consistent_solve(params, l, k, g, &grid.refined(factor))?;
        if !res.converged {
            return Ok(None);
        }
        raw[i] = res.energy;
        g = res.energy;
        finest = Some(res);
    }
    let Some(finest) = finest else {
        return Ok(None);
    };
    let ratio = (raw[0] - raw[1]) / (raw[1] - raw[2]);
    let (energy, order) = if ratio.is_finite() && ratio > 1.0 {
        (raw[2] + (raw[2] - raw[1]) / (ratio - 1.0), log2(ratio))
    } else {
        (raw[2], f64::NAN)
    };
    Ok(Some(Extrapolated {
        energy,
        raw,
        order,
        finest,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{coulomb_energy, solve_level, StateIndex};

    fn paper(delta: f64) -> ModelParams {
        ModelParams::paper_preset(delta).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(0.0, 10.0, 1000).is_err());
        assert!(GridSpec::new(1.0, 0.5, 1000).is_err());
        assert!(GridSpec::new(1e-6, 10.0, 50).is_err());
        let g = GridSpec::new(1e-6, 10.0, 999).unwrap();
        assert!((g.spacing() - (10.0 - 1e-6) / 1000.0).abs() < 1e-15);
        assert_eq!(g.points().len(), 999);
    }

    #[test]
    fn free_particle_is_unphysical() {
        let p = ModelParams::new(1.0, 0.1, 0.0, 0.0, 1.0, 0.0).unwrap();
        let g = GridSpec::new(1e-6, 30.0, 400).unwrap();
        let r = self_consistent_solve(&p, 0, 0, -0.5, &g).unwrap();
        assert!(!r.converged && r.unphysical);
    }

    #[test]
    fn matches_decaying_spectrum_for_p_states() {
        let p = paper(0.05);
        for (k, guess) in [(0usize, 0.5), (1, 0.5)] {
            let ex = extrapolated_solve(&p, 1, k, guess, &GridSpec::default()).unwrap().unwrap();
            let analytic = solve_level(&p, &StateIndex::nu(k as u32, 1)).unwrap().lowest();
            assert!((ex.energy - analytic.energy).abs() < 1e-4, "k={k}: {ex:?} vs {analytic:?}");
            assert_eq!(ex.finest.node_count, k);
        }
    }

    #[test]
    fn coulomb_limit() {
        let p = ModelParams::new(1.0, 1e-3, 1.0, 0.0, 1.0, 0.0).unwrap();
        let r = self_consistent_solve(&p, 0, 0, 0.1, &GridSpec::default()).unwrap();
        assert!(r.converged);
        assert!((r.energy - coulomb_energy(1.0, 0, 0, 1.0)).abs() < 5e-3, "{r:?}");
    }
}
