//! Normalized radial eigenfunctions
//!
//! ```text
//! chi(s) = C s^eps (1-s)^kappa  Gamma(n+2eps+1) / (n! Gamma(2eps+1))
//!          2F1(-n, 2eps + 2kappa + n; 1 + 2eps; s),      s = e^{-2 delta r}
//! ```
//!
//! normalized so that `(1/(2 delta)) integral_0^1 chi(s)^2 / s ds = 1`.

use crate::math::{exp, ln, ln_1p, one_minus_exp_neg, sqrt};
use crate::potential::ModelParams;
use crate::specfun::{hyp2f1_terminating, integrate, ln_factorial, ln_gamma, QuadratureSpec};
use crate::spectrum::{dimensionless, EnergyLevel, StateIndex};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialWavefunction {
    pub epsilon: f64,
    pub kappa: f64,
    /// Polynomial degree, equal to the radial node count.
    pub n_r: u32,
    /// Normalization constant `C`.
    pub norm: f64,
    pub delta: f64,
    ln_prefactor: f64,
}

/// Closed-form normalization constant
///
/// ```text
/// C^2 = 2 delta n! (n+kappa+eps) Gamma(n+2eps+2kappa) Gamma(2eps+1)
///       / ((n+kappa) Gamma(n+2eps+1) Gamma(2eps) Gamma(n+2kappa))
/// ```
pub fn closed_form_norm(n_r: u32, epsilon: f64, kappa: f64, delta: f64) -> Result<f64> {
    let n = f64::from(n_r);
    let ln_c2 = ln(2.0 * delta) + ln_factorial(n_r) + ln(n + kappa + epsilon)
        + ln_gamma(n + 2.0 * epsilon + 2.0 * kappa)?
        + ln_gamma(2.0 * epsilon + 1.0)?
        - ln(n + kappa)
        - ln_gamma(n + 2.0 * epsilon + 1.0)?
        - ln_gamma(2.0 * epsilon)?
        - ln_gamma(n + 2.0 * kappa)?;
    Ok(exp(0.5 * ln_c2))
}

/// Eigenfunction of `state` at the solved `level`.
pub fn build_wavefunction(
    params: &ModelParams,
    level: &EnergyLevel,
    state: &StateIndex,
) -> Result<RadialWavefunction> {
    if !level.exists {
        return Err(Error::AbsentLevel);
    }
    let d = dimensionless(params, state.l, level.energy)?;
    RadialWavefunction::new(d.epsilon, d.kappa, state.n_r, params.delta)
}

impl RadialWavefunction {
    /// Normalized eigenfunction for explicit exponents.
    pub fn new(epsilon: f64, kappa: f64, n_r: u32, delta: f64) -> Result<Self> {
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::Domain {
                what: "epsilon",
                value: epsilon,
            });
        }
        if !(kappa > 0.5) || !kappa.is_finite() {
            return Err(Error::Domain {
                what: "kappa",
                value: kappa,
            });
        }
        if !(delta > 0.0) {
            return Err(Error::Domain {
                what: "delta",
                value: delta,
            });
        }
        let n = f64::from(n_r);
        let ln_prefactor =
            ln_gamma(n + 2.0 * epsilon + 1.0)? - ln_factorial(n_r) - ln_gamma(2.0 * epsilon + 1.0)?;
        Ok(Self {
            epsilon,
            kappa,
            n_r,
            norm: closed_form_norm(n_r, epsilon, kappa, delta)?,
            delta,
            ln_prefactor,
        })
    }

    /// Copy with the normalization constant multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            norm: self.norm * factor,
            ..*self
        }
    }

    /// The terminating series `2F1(-n, 2eps + 2kappa + n; 1 + 2eps; s)`.
    pub fn polynomial(&self, s: f64) -> Result<f64> {
        hyp2f1_terminating(
            self.n_r,
            2.0 * self.epsilon + 2.0 * self.kappa + f64::from(self.n_r),
            1.0 + 2.0 * self.epsilon,
            s,
        )
    }

    /// `chi` from `ln s` and `ln(1-s)`, which keeps both ends accurate.
    fn chi_from_logs(&self, s: f64, ln_s: f64, ln_one_minus: f64) -> Result<f64> {
        let envelope = exp(self.epsilon * ln_s + self.kappa * ln_one_minus + self.ln_prefactor);
        Ok(self.norm * envelope * self.polynomial(s)?)
    }

    /// `chi` as a function of `s` on `[0, 1]`.
    pub fn eval_chi_s(&self, s: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::Domain {
                what: "s",
                value: s,
            });
        }
        if s == 0.0 || s == 1.0 {
            return Ok(0.0);
        }
        self.chi_from_logs(s, ln(s), ln_1p(-s))
    }

    /// `chi(r)`; zero at the origin.
    pub fn eval_chi(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) || r.is_nan() {
            return Err(Error::Domain {
                what: "radius",
                value: r,
            });
        }
        if r == 0.0 {
            return Ok(0.0);
        }
        let x = 2.0 * self.delta * r;
        if x.is_infinite() {
            return Ok(0.0);
        }
        self.chi_from_logs(exp(-x), -x, ln(one_minus_exp_neg(x)))
    }

    /// `(1/(2 delta)) integral_0^1 chi(s)^2 / s ds`, which is 1 for a
    /// correctly normalized function.
    pub fn normalization_check(&self, spec: &QuadratureSpec) -> Result<f64> {
        let integrand = |s: f64| {
            let ln_s = ln(s);
            let ln_one_minus = ln_1p(-s);
            let envelope = exp(
                (2.0 * self.epsilon - 1.0) * ln_s
                    + 2.0 * self.kappa * ln_one_minus
                    + 2.0 * self.ln_prefactor,
            );
            let p = self.polynomial(s).unwrap_or(f64::NAN);
            self.norm * self.norm * envelope * p * p
        };
        let q = integrate(integrand, 0.0, 1.0, spec)?;
        Ok(q.value / (2.0 * self.delta))
    }

    /// Normalization constant obtained by quadrature instead of the closed
    /// form.
    pub fn quadrature_norm(&self, spec: &QuadratureSpec) -> Result<f64> {
        Ok(self.norm / sqrt(self.normalization_check(spec)?))
    }

    /// Sign changes of `chi` over `samples` interior points of `s in (0, 1)`,
    /// i.e. over the whole half-line in `r`.
    pub fn count_nodes(&self, samples: usize) -> Result<usize> {
        let step = 1.0 / (samples + 1) as f64;
        let mut nodes = 0;
        let mut last = 0.0_f64;
        for i in 1..=samples {
            let p = self.polynomial(step * i as f64)?;
            if p != 0.0 {
                if last != 0.0 && (p < 0.0) != (last < 0.0) {
                    nodes += 1;
                }
                last = p;
            }
        }
        Ok(nodes)
    }

    /// Sign changes of `chi(r)` on `samples` uniform points of `(0, r_max]`.
    pub fn count_nodes_in(&self, r_max: f64, samples: usize) -> Result<usize> {
        let mut nodes = 0;
        let mut last = 0.0_f64;
        for i in 1..=samples {
            let chi = self.eval_chi(r_max * i as f64 / samples as f64)?;
            if chi != 0.0 {
                if last != 0.0 && (chi < 0.0) != (last < 0.0) {
                    nodes += 1;
                }
                last = chi;
            }
        }
        Ok(nodes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::ln_beta;
    use crate::spectrum::solve_level;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn paper(delta: f64) -> ModelParams {
        ModelParams::paper_preset(delta).unwrap()
    }

    fn nu_state(delta: f64, n_r: u32, l: u32) -> RadialWavefunction {
        let s = StateIndex::nu(n_r, l);
        let level = solve_level(&paper(delta), &s).unwrap().lowest();
        build_wavefunction(&paper(delta), &level, &s).unwrap()
    }

    #[test]
    fn degree_zero_is_the_bare_envelope() {
        let wf = RadialWavefunction::new(0.9, 1.3, 0, 0.1).unwrap();
        for s in [0.1_f64, 0.5, 0.9] {
            let bare = wf.norm * s.powf(0.9) * (1.0 - s).powf(1.3);
            assert_relative_eq!(wf.eval_chi_s(s).unwrap(), bare, max_relative = 1e-13);
        }
    }

    #[test]
    fn ground_state_norm_matches_beta_integral() {
        let (eps, kappa, delta) = (0.9539, 1.498, 0.05);
        let wf = RadialWavefunction::new(eps, kappa, 0, delta).unwrap();
        let integral = ln_beta(2.0 * eps, 2.0 * kappa + 1.0).unwrap().exp();
        assert_relative_eq!(wf.norm, (2.0 * delta / integral).sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn built_states_are_normalized() {
        let spec = QuadratureSpec::default();
        for (n_r, l) in [(0, 1), (1, 1), (2, 1), (0, 2)] {
            let wf = nu_state(0.15, n_r, l);
            let norm = wf.normalization_check(&spec).unwrap();
            assert!((norm - 1.0).abs() < 1e-8, "n_r={n_r} l={l}: {norm}");
            assert_relative_eq!(wf.quadrature_norm(&spec).unwrap(), wf.norm, max_relative = 1e-8);
        }
    }

    #[test]
    fn doubling_the_constant_quadruples_the_integral() {
        let wf = nu_state(0.15, 0, 1);
        let spec = QuadratureSpec::default();
        let twice = wf.scaled(2.0).normalization_check(&spec).unwrap();
        assert_relative_eq!(twice, 4.0 * wf.normalization_check(&spec).unwrap(), max_relative = 1e-9);
    }

    #[test]
    fn boundary_values_and_decay() {
        let wf = nu_state(0.15, 1, 1);
        assert_eq!(wf.eval_chi(0.0).unwrap(), 0.0);
        assert!(wf.eval_chi(50.0 / 0.15).unwrap().abs() < 1e-6);
        assert!(wf.eval_chi(1e-9).unwrap().abs() < 1e-6);
        assert!(wf.eval_chi(-1.0).is_err());
        assert!(wf.eval_chi_s(1.5).is_err());
    }

    #[test]
    fn r_and_s_forms_agree() {
        let wf = nu_state(0.05, 1, 1);
        for r in [0.5_f64, 2.0, 10.0, 30.0] {
            let s = (-2.0 * 0.05 * r).exp();
            assert_relative_eq!(wf.eval_chi(r).unwrap(), wf.eval_chi_s(s).unwrap(), max_relative = 1e-10);
        }
    }

    #[test]
    fn node_count_equals_degree() {
        for n_r in 0..3 {
            let wf = nu_state(0.15, n_r, 1);
            assert_eq!(wf.count_nodes(20_000).unwrap(), n_r as usize);
            assert_eq!(wf.count_nodes_in(40.0, 8000).unwrap(), n_r as usize);
        }
    }

    #[test]
    fn absent_levels_are_rejected() {
        let s = StateIndex::nu(0, 0);
        let level = EnergyLevel::absent(0, s.branch);
        assert_eq!(build_wavefunction(&paper(0.1), &level, &s), Err(Error::AbsentLevel));
        assert!(RadialWavefunction::new(0.0, 1.0, 0, 0.1).is_err());
        assert!(RadialWavefunction::new(1.0, 0.5, 0, 0.1).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn closed_form_constant_normalizes(eps in 0.3f64..6.0, kappa in 0.6f64..4.0, n_r in 0u32..4) {
            let wf = RadialWavefunction::new(eps, kappa, n_r, 0.1).unwrap();
            let norm = wf.normalization_check(&QuadratureSpec::default()).unwrap();
            prop_assert!((norm - 1.0).abs() < 1e-8, "{}", norm);
        }
    }
}
