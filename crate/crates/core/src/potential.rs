//! Manning-Rosen plus class-of-Yukawa potential.
//!
//! The exact potential is
//!
//! ```text
//! V(r) = 1/(2 M b^2) [ eta(eta-1) e^{-2r/b} / (1-e^{-r/b})^2 - A e^{-r/b} / (1-e^{-r/b}) ]
//!        - V0 e^{-delta r} / r - V0' e^{-2 delta r} / r^2
//! ```
//!
//! With the range tied to the screening parameter, `1/b = 2 delta`, and the
//! exponential replacements
//!
//! ```text
//! 1/r^2 ~ 4 delta^2 e^{-2 delta r} / (1 - e^{-2 delta r})^2
//! 1/r   ~ 2 delta   e^{-delta r}   / (1 - e^{-2 delta r})
//! ```
//!
//! the whole potential collapses onto two shapes,
//!
//! ```text
//! V'(r) = V014 s^2 / (1-s)^2 - V023 s / (1-s),   s = e^{-2 delta r}
//! ```
//!
//! All quantities use natural units (hbar = c = 1).

use alloc::vec::Vec;

use crate::math::{exp, ln, one_minus_exp_neg};
use crate::{Error, Result};

/// Physical inputs of the model.
///
/// The Manning-Rosen range `b` is not an independent input: it is always
/// `1 / (2 delta)`, see [`ModelParams::range`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Rest mass `M`.
    pub mass: f64,
    /// Screening parameter `delta` (inverse length).
    pub delta: f64,
    /// Yukawa strength `V0`.
    pub v0: f64,
    /// Inverse-quadratic Yukawa strength `V0'`.
    pub v0_prime: f64,
    /// Manning-Rosen `eta`.
    pub eta: f64,
    /// Manning-Rosen `A`.
    pub a: f64,
}

impl ModelParams {
    pub fn new(mass: f64, delta: f64, v0: f64, v0_prime: f64, eta: f64, a: f64) -> Result<Self> {
        let params = Self {
            mass,
            delta,
            v0,
            v0_prime,
            eta,
            a,
        };
        params.validate()?;
        Ok(params)
    }

    /// Like [`ModelParams::new`] but with an explicit Manning-Rosen range,
    /// which must satisfy `b * 2 delta = 1`.
    pub fn with_range(
        mass: f64,
        delta: f64,
        v0: f64,
        v0_prime: f64,
        eta: f64,
        a: f64,
        b: f64,
    ) -> Result<Self> {
        let params = Self::new(mass, delta, v0, v0_prime, eta, a)?;
        if !((b * 2.0 * delta - 1.0).abs() <= 4.0 * f64::EPSILON) {
            return Err(Error::InvalidModel("Manning-Rosen range must equal 1/(2 delta)"));
        }
        Ok(params)
    }

    /// Parameter set used for the published numerics: `M = 1`, `V0 = 1`,
    /// `V0' = 0.1`, `eta = 0.75` and `A = 2b = 1/delta`.
    pub fn paper_preset(delta: f64) -> Result<Self> {
        if !(delta > 0.0) {
            return Err(Error::InvalidModel("delta must be positive"));
        }
        Self::new(1.0, delta, 1.0, 0.1, 0.75, 1.0 / delta)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.mass, self.delta, self.v0, self.v0_prime, self.eta, self.a]
            .iter()
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::InvalidModel("parameters must be finite"));
        }
        if !(self.delta > 0.0) {
            return Err(Error::InvalidModel("delta must be positive"));
        }
        if !(self.mass > 0.0) {
            return Err(Error::InvalidModel("mass must be positive"));
        }
        Ok(())
    }

    /// Manning-Rosen range `b = 1 / (2 delta)`.
    pub fn range(&self) -> f64 {
        0.5 / self.delta
    }
}

/// Strengths of the approximated potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientSet {
    pub v01: f64,
    pub v02: f64,
    pub v03: f64,
    pub v04: f64,
    /// `V01 + V04`, multiplies `s^2/(1-s)^2`.
    pub v014: f64,
    /// `V02 + V03`, multiplies `s/(1-s)`.
    pub v023: f64,
}

pub fn derive_coefficients(params: &ModelParams) -> Result<CoefficientSet> {
    params.validate()?;
    let d2 = params.delta * params.delta;
    let v01 = 2.0 * d2 * params.eta * (params.eta - 1.0) / params.mass;
    let v02 = 2.0 * d2 * params.a / params.mass;
    let v03 = 2.0 * params.delta * params.v0;
    let v04 = -4.0 * d2 * params.v0_prime;
    Ok(CoefficientSet {
        v01,
        v02,
        v03,
        v04,
        v014: v01 + v04,
        v023: v02 + v03,
    })
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "radius",
            value: r,
        })
    }
}

/// Shape functions of the approximated potential at radius `r`:
/// `(s/(1-s), s^2/(1-s)^2, s/(1-s)^2)` with `s = e^{-2 delta r}`.
pub(crate) fn shapes(delta: f64, r: f64) -> (f64, f64, f64) {
    let s = exp(-2.0 * delta * r);
    let one_minus = one_minus_exp_neg(2.0 * delta * r);
    let ratio = s / one_minus;
    (ratio, ratio * ratio, ratio / one_minus)
}

/// The exact potential, evaluated term by term with `b = 1/(2 delta)`.
pub fn exact_potential(params: &ModelParams, r: f64) -> Result<f64> {
    params.validate()?;
    check_radius(r)?;
    let b = params.range();
    let e1 = exp(-r / b);
    let one_minus = one_minus_exp_neg(r / b);
    let manning_rosen = (params.eta * (params.eta - 1.0) * e1 * e1 / (one_minus * one_minus)
        - params.a * e1 / one_minus)
        / (2.0 * params.mass * b * b);
    let yukawa = -params.v0 * exp(-params.delta * r) / r;
    let inverse_quadratic = -params.v0_prime * exp(-2.0 * params.delta * r) / (r * r);
    Ok(manning_rosen + yukawa + inverse_quadratic)
}

/// The potential after the exponential approximation of `1/r` and `1/r^2`.
pub fn approx_potential(params: &ModelParams, r: f64) -> Result<f64> {
    let c = derive_coefficients(params)?;
    check_radius(r)?;
    let (ratio, ratio_sq, _) = shapes(params.delta, r);
    Ok(c.v014 * ratio_sq - c.v023 * ratio)
}

/// Effective potential of the approximated radial equation at trial energy
/// `energy`: the coupling-weighted potential plus the approximated
/// centrifugal barrier.
pub fn effective_potential(params: &ModelParams, energy: f64, l: u32, r: f64) -> Result<f64> {
    let c = derive_coefficients(params)?;
    check_radius(r)?;
    if !(energy + params.mass > 0.0) {
        return Err(Error::Domain {
            what: "E + M",
            value: energy + params.mass,
        });
    }
    let (ratio, ratio_sq, barrier) = shapes(params.delta, r);
    let ll = f64::from(l) * f64::from(l + 1);
    let d2 = params.delta * params.delta;
    Ok(2.0 * (energy + params.mass) * (c.v014 * ratio_sq - c.v023 * ratio)
        + 4.0 * ll * d2 * barrier)
}

/// `Delta(r) = V(r) - V'(r)`, the error of the approximation on the bare
/// potential (no centrifugal term).
pub fn approximation_error(params: &ModelParams, r: f64) -> Result<f64> {
    Ok(exact_potential(params, r)? - approx_potential(params, r)?)
}

/// Exponential stand-in for `1/r`.
pub fn inverse_r_approx(delta: f64, r: f64) -> f64 {
    2.0 * delta * exp(-delta * r) / one_minus_exp_neg(2.0 * delta * r)
}

/// Exponential stand-in for `1/r^2`.
pub fn inverse_r2_approx(delta: f64, r: f64) -> f64 {
    let one_minus = one_minus_exp_neg(2.0 * delta * r);
    4.0 * delta * delta * exp(-2.0 * delta * r) / (one_minus * one_minus)
}

/// `n` logarithmically spaced points on `[lo, hi]`, endpoints included.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo) || n < 2 {
        return Err(Error::Domain {
            what: "log grid bounds",
            value: lo,
        });
    }
    let (a, b) = (ln(lo), ln(hi));
    let step = (b - a) / (n - 1) as f64;
    let mut grid: Vec<f64> = (0..n).map(|i| exp(a + step * i as f64)).collect();
    grid[0] = lo;
    grid[n - 1] = hi;
    Ok(grid)
}

/// Default grid for approximation-error scans: 400 log-spaced points on
/// `[1e-2, 20]`.
pub fn default_error_grid() -> Vec<f64> {
    log_grid(1e-2, 20.0, 400).expect("static bounds are valid")
}

/// Largest `|Delta(r)|` over `grid`, returned as `(r, Delta(r))`.
pub fn max_approximation_error(params: &ModelParams, grid: &[f64]) -> Result<(f64, f64)> {
    let mut best = (f64::NAN, 0.0_f64);
    for &r in grid {
        let delta = approximation_error(params, r)?;
        if best.0.is_nan() || delta.abs() > best.1.abs() {
            best = (r, delta);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn paper(delta: f64) -> ModelParams {
        ModelParams::paper_preset(delta).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        let p = ModelParams::new(1.0, 0.05, 1.0, 0.1, 0.75, 20.0).unwrap();
        let c = derive_coefficients(&p).unwrap();
        assert_relative_eq!(c.v03, 0.1, max_relative = 1e-15);
        assert_relative_eq!(c.v04, -0.001, max_relative = 1e-15);
        // 2 d^2 (0.75)(-0.25) - 4 d^2 (0.1) = -0.775 d^2
        assert_relative_eq!(c.v014, -0.0019375, max_relative = 1e-14);
        assert_eq!(c.v014, c.v01 + c.v04);
        assert_eq!(c.v023, c.v02 + c.v03);
    }

    #[test]
    fn rejects_invalid_models() {
        assert!(ModelParams::new(1.0, 0.0, 1.0, 0.1, 0.75, 1.0).is_err());
        assert!(ModelParams::new(0.0, 0.1, 1.0, 0.1, 0.75, 1.0).is_err());
        let bad = ModelParams {
            mass: -1.0,
            ..paper(0.1)
        };
        assert!(derive_coefficients(&bad).is_err());
    }

    #[test]
    fn range_is_tied_to_delta() {
        assert!(ModelParams::with_range(1.0, 0.05, 1.0, 0.1, 0.75, 20.0, 10.0).is_ok());
        assert!(ModelParams::with_range(1.0, 0.05, 1.0, 0.1, 0.75, 20.0, 11.0).is_err());
        assert_eq!(paper(0.05).range() * 2.0 * 0.05, 1.0);
    }

    #[test]
    fn vanishing_strengths_give_zero() {
        let p = ModelParams::new(1.0, 0.1, 0.0, 0.0, 1.0, 0.0).unwrap();
        for r in [0.01, 0.5, 3.0, 40.0] {
            assert_eq!(exact_potential(&p, r).unwrap(), 0.0);
            assert_eq!(approx_potential(&p, r).unwrap(), 0.0);
            assert_eq!(effective_potential(&p, -0.5, 0, r).unwrap(), 0.0);
        }
    }

    #[test]
    fn exact_potential_reference_value() {
        // Term by term at delta = 0.05, r = 1 with the paper preset (b = 10, A = 20):
        // MR = 1/(2*100) [ -0.1875 e^{-0.2}/(1-e^{-0.1})^2 - 20 e^{-0.1}/(1-e^{-0.1}) ]
        // Y  = -e^{-0.05},  IQY = -0.1 e^{-0.1}
        let v = exact_potential(&paper(0.05), 1.0).unwrap();
        assert_relative_eq!(v, -2.077_304_213_630_592_8, max_relative = 1e-13);
    }

    #[test]
    fn exact_potential_decays() {
        let p = paper(0.05);
        let far = exact_potential(&p, 2000.0).unwrap();
        assert!(far.abs() < 1e-30);
    }

    #[test]
    fn radius_must_be_positive() {
        let p = paper(0.1);
        assert!(exact_potential(&p, 0.0).is_err());
        assert!(approx_potential(&p, -1.0).is_err());
        assert!(effective_potential(&p, 0.0, 1, 0.0).is_err());
    }

    #[test]
    fn centrifugal_only_effective_potential() {
        let p = ModelParams::new(1.0, 0.1, 0.0, 0.0, 1.0, 0.0).unwrap();
        for r in [0.1, 1.0, 7.0] {
            let d = 0.1_f64;
            let s = (-2.0 * d * r).exp();
            let expected = 8.0 * d * d * s / ((1.0 - s) * (1.0 - s));
            assert_relative_eq!(
                effective_potential(&p, 0.2, 1, r).unwrap(),
                expected,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn square_of_inverse_r_approximant() {
        for delta in [0.01, 0.05, 0.3] {
            for r in log_grid(1e-3, 50.0, 200).unwrap() {
                let one = inverse_r_approx(delta, r);
                assert_relative_eq!(one * one, inverse_r2_approx(delta, r), max_relative = 1e-14);
            }
        }
    }

    #[test]
    fn approximation_error_is_order_1e3_at_small_delta() {
        let grid = log_grid(0.1, 20.0, 400).unwrap();
        let (_, max5) = max_approximation_error(&paper(0.05), &grid).unwrap();
        let (_, max15) = max_approximation_error(&paper(0.15), &grid).unwrap();
        assert!(max5.abs() < 1e-2, "{max5}");
        assert!(max5.abs() > 1e-4, "{max5}");
        assert!(max5.abs() < max15.abs());
    }

    #[test]
    fn approximation_error_shrinks_with_delta_at_fixed_radius() {
        let errs: Vec<f64> = [0.15, 0.10, 0.05]
            .iter()
            .map(|&d| approximation_error(&paper(d), 2.0).unwrap().abs())
            .collect();
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
    }

    #[test]
    fn halving_delta_does_not_increase_error() {
        for r in [0.5, 1.0, 2.0, 5.0] {
            for d in [0.2, 0.1, 0.05] {
                let coarse = approximation_error(&paper(d), r).unwrap().abs();
                let fine = approximation_error(&paper(d / 2.0), r).unwrap().abs();
                assert!(fine <= coarse, "r={r} d={d}: {fine} > {coarse}");
            }
        }
    }

    #[test]
    fn log_grid_endpoints() {
        let g = default_error_grid();
        assert_eq!(g.len(), 400);
        assert_eq!(g[0], 1e-2);
        assert_eq!(g[399], 20.0);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }
}
