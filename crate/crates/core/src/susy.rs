//! Supersymmetric construction of the same spectrum.
//!
//! The superpotential `W(r) = F - G s/(1-s)` with `s = e^{-2 delta r}` turns
//! the radial equation into the Riccati form
//! `W^2 - W' = V_eff(r) - (E^2 - M^2)` provided
//!
//! ```text
//! G = delta + 2 delta w,        F = -G/2 + 2 delta^2 (alpha^2 + beta^2) / G
//! ```
//!
//! and `F^2 = M^2 - E^2`. Shifting `G -> G + 2 delta` maps the partner
//! potential `W^2 + W'` onto `W^2 - W'` of the next member up to a constant,
//! so the `q`-th level follows from `G_q = G + 2 q delta`.
//!
//! `F`, `G` depend on the energy through `alpha^2`, `beta^2`, so they are
//! rebuilt at every trial energy of the root search.

use alloc::vec::Vec;

use crate::math::{exp, one_minus_exp_neg, pow, sqrt};
use crate::potential::{effective_potential, shapes, ModelParams};
use crate::spectrum::{self, discriminant, Levels, StateIndex};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Superpotential {
    /// Asymptotic value `W(infinity)`.
    pub f: f64,
    /// Strength of the `s/(1-s)` term.
    pub g: f64,
    pub delta: f64,
    /// Energy at which `F` and `G` were computed.
    pub energy: f64,
    /// `2 delta^2 (alpha^2 + beta^2)`.
    pub strength: f64,
}

pub fn build_superpotential(params: &ModelParams, l: u32, energy: f64) -> Result<Superpotential> {
    let d = spectrum::dimensionless(params, l, energy)?;
    let delta = params.delta;
    Ok(Superpotential::from_strength(
        delta + 2.0 * delta * d.w,
        2.0 * delta * delta * (d.alpha_sq + d.beta_sq),
        delta,
        energy,
    ))
}

impl Superpotential {
    /// Superpotential with strength `g`, deriving `F = -G/2 + K/G`.
    pub fn from_strength(g: f64, strength: f64, delta: f64, energy: f64) -> Self {
        Self {
            f: -0.5 * g + strength / g,
            g,
            delta,
            energy,
            strength,
        }
    }

    /// Member `q` of the shape-invariant chain, `G_q = G + 2 q delta`.
    pub fn shifted(&self, q: u32) -> Self {
        Self::from_strength(
            self.g + 2.0 * f64::from(q) * self.delta,
            self.strength,
            self.delta,
            self.energy,
        )
    }

    fn check_r(r: f64) -> Result<()> {
        if r > 0.0 && r.is_finite() {
            Ok(())
        } else {
            Err(Error::Domain {
                what: "radius",
                value: r,
            })
        }
    }

    /// `W(r) = F - G s/(1-s)`.
    pub fn eval_w(&self, r: f64) -> Result<f64> {
        Self::check_r(r)?;
        let (ratio, _, _) = shapes(self.delta, r);
        Ok(self.f - self.g * ratio)
    }

    /// `W'(r) = 2 delta G s/(1-s)^2`.
    pub fn eval_w_prime(&self, r: f64) -> Result<f64> {
        Self::check_r(r)?;
        let (_, _, barrier) = shapes(self.delta, r);
        Ok(2.0 * self.delta * self.g * barrier)
    }

    /// `V_-(r) = W^2 - W'`.
    pub fn partner_minus(&self, r: f64) -> Result<f64> {
        let w = self.eval_w(r)?;
        Ok(w * w - self.eval_w_prime(r)?)
    }

    /// `V_+(r) = W^2 + W'`.
    pub fn partner_plus(&self, r: f64) -> Result<f64> {
        let w = self.eval_w(r)?;
        Ok(w * w + self.eval_w_prime(r)?)
    }

    /// Shape-invariance remainder `R = V_+(G; r) - V_-(G + 2 delta; r)`
    /// evaluated numerically at `r`.
    pub fn remainder_at(&self, r: f64) -> Result<f64> {
        Ok(self.partner_plus(r)? - self.shifted(1).partner_minus(r)?)
    }

    /// Closed form of the remainder, `F(G)^2 - F(G + 2 delta)^2`.
    pub fn remainder(&self) -> f64 {
        let next = self.shifted(1).f;
        self.f * self.f - next * next
    }

    /// Ground-state amplitude `exp(-integral W) = e^{-F r} (1-s)^{G/(2 delta)}`
    /// (unnormalized).
    pub fn ground_state(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::Domain {
                what: "radius",
                value: r,
            });
        }
        if r == 0.0 {
            return Ok(0.0);
        }
        let one_minus = one_minus_exp_neg(2.0 * self.delta * r);
        Ok(exp(-self.f * r) * pow(one_minus, self.g / (2.0 * self.delta)))
    }
}

/// Result of a Riccati-identity scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiccatiCheck {
    /// Largest `|W^2 - W' - V_eff + E^2 - M^2|`.
    pub max_abs: f64,
    /// Largest deviation divided by the local scale
    /// `max(|W^2|, |W'|, |V_eff|, |E^2 - M^2|)`.
    pub max_rel: f64,
    /// Radius of the largest relative deviation.
    pub worst_r: f64,
}

/// Compares `W^2 - W'` with `V_eff(r; E) - (E^2 - M^2)` over `grid`, using
/// the energy stored in `sp`.
pub fn riccati_check(sp: &Superpotential, params: &ModelParams, l: u32, grid: &[f64]) -> Result<RiccatiCheck> {
    let e = sp.energy;
    let gap = e * e - params.mass * params.mass;
    let mut out = RiccatiCheck {
        max_abs: 0.0,
        max_rel: 0.0,
        worst_r: f64::NAN,
    };
    for &r in grid {
        let w = sp.eval_w(r)?;
        let wp = sp.eval_w_prime(r)?;
        let v = effective_potential(params, e, l, r)?;
        let dev = (w * w - wp - (v - gap)).abs();
        let scale = (w * w).max(wp.abs()).max(v.abs()).max(gap.abs());
        let rel = if scale > 0.0 { dev / scale } else { dev };
        out.max_abs = out.max_abs.max(dev);
        if rel >= out.max_rel || out.worst_r.is_nan() {
            out.max_rel = rel;
            out.worst_r = r;
        }
    }
    Ok(out)
}

/// `M^2 - E^2` predicted by the shape-invariance chain,
/// `(-G_q/2 + 2 delta^2 (alpha^2 + beta^2) / G_q)^2`.
pub fn squared_condition(delta: f64, alpha_sq: f64, beta_sq: f64, l: u32, q: u32) -> Option<f64> {
    let t = discriminant(alpha_sq, l);
    if !(t >= 0.0) {
        return None;
    }
    let g = delta * (1.0 + 2.0 * sqrt(t)) + 2.0 * f64::from(q) * delta;
    let f = -0.5 * g + 2.0 * delta * delta * (alpha_sq + beta_sq) / g;
    Some(f * f)
}

/// Levels of `state` from `eps + sigma F_q / (2 delta) = 0`, where the
/// branch requires `sigma F_q < 0`.
pub fn energy_from_shape_invariance(params: &ModelParams, state: &StateIndex) -> Result<Levels> {
    params.validate()?;
    let sigma = state.branch.sigma();
    let q = state.q();
    let f = |e: f64| {
        let sp = build_superpotential(params, state.l, e).ok()?.shifted(q);
        let value = spectrum::epsilon(params, e) + sigma * sp.f / (2.0 * params.delta);
        (sigma * sp.f < 0.0).then_some(value)
    };
    spectrum::solve_with(params, state, f)
}

/// Remainder spread `max - min` of `R(r)` over `grid`.
pub fn remainder_spread(sp: &Superpotential, grid: &[f64]) -> Result<f64> {
    let values: Vec<f64> = grid.iter().map(|&r| sp.remainder_at(r)).collect::<Result<_>>()?;
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(max - min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::log_grid;
    use crate::spectrum::{solve_level, Branch, Convention};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn paper(delta: f64) -> ModelParams {
        ModelParams::paper_preset(delta).unwrap()
    }

    #[test]
    fn coulomb_free_strength() {
        let p = ModelParams::new(1.0, 0.1, 0.0, 0.0, 1.0, 0.0).unwrap();
        let sp = build_superpotential(&p, 0, -0.5).unwrap();
        assert_relative_eq!(sp.g, 0.2, max_relative = 1e-15);
    }

    #[test]
    fn paper_strength_example() {
        let sp = build_superpotential(&paper(0.05), 0, -0.995440).unwrap();
        let alpha_sq: f64 = -0.3875 * (1.0 - 0.995440);
        let expect = 0.05 + 0.1 * (0.25 + alpha_sq).sqrt();
        assert_relative_eq!(sp.g, expect, max_relative = 1e-12);
        assert!((sp.g - 0.09982).abs() < 1e-5);
    }

    #[test]
    fn w_tends_to_f_and_matches_s_form() {
        let sp = build_superpotential(&paper(0.1), 1, -0.8).unwrap();
        assert!((sp.eval_w(500.0).unwrap() - sp.f).abs() < 1e-30);
        let mut last = f64::NEG_INFINITY;
        for r in [0.1, 0.5, 1.0, 3.0, 10.0] {
            let w = sp.eval_w(r).unwrap();
            let s = (-2.0 * 0.1 * r).exp();
            assert_relative_eq!(w, sp.f - sp.g * s / (1.0 - s), max_relative = 1e-12);
            assert!(w - sp.f < 0.0 && w > last);
            last = w;
        }
        assert!(sp.eval_w(0.0).is_err());
    }

    #[test]
    fn w_prime_matches_finite_difference() {
        let sp = build_superpotential(&paper(0.15), 2, -0.6).unwrap();
        for r in [0.3, 1.0, 4.0] {
            let h = 1e-5;
            let fd = (sp.eval_w(r + h).unwrap() - sp.eval_w(r - h).unwrap()) / (2.0 * h);
            assert_relative_eq!(sp.eval_w_prime(r).unwrap(), fd, max_relative = 1e-7);
        }
    }

    #[test]
    fn zero_potential_formal_check() {
        let p = ModelParams::new(1.0, 0.1, 0.0, 0.0, 1.0, 0.0).unwrap();
        let sp = Superpotential {
            f: 0.0,
            g: 0.0,
            delta: 0.1,
            energy: 1.0,
            strength: 0.0,
        };
        let grid = log_grid(0.1, 40.0, 50).unwrap();
        let check = riccati_check(&sp, &p, 0, &grid).unwrap();
        assert_eq!(check.max_abs, 0.0);
    }

    #[test]
    fn riccati_identity_at_the_ground_state() {
        let p = paper(0.05);
        let e = solve_level(&p, &StateIndex::nu(0, 0)).unwrap().lowest();
        assert!(e.exists);
        let sp = build_superpotential(&p, 0, e.energy).unwrap();
        assert!((sp.f / (2.0 * p.delta) - spectrum::epsilon(&p, e.energy)).abs() < 1e-9);
        let grid = log_grid(0.1, 40.0, 400).unwrap();
        assert!(riccati_check(&sp, &p, 0, &grid).unwrap().max_rel <= 1e-9);

        let off = build_superpotential(&p, 0, e.energy + 1e-3).unwrap();
        assert!(riccati_check(&off, &p, 0, &grid).unwrap().max_rel > 1e-9);
    }

    #[test]
    fn chain_step_is_two_delta() {
        let sp = build_superpotential(&paper(0.1), 1, -0.7).unwrap();
        for q in 1..5 {
            let step = sp.shifted(q).g - sp.shifted(q - 1).g;
            assert_relative_eq!(step, 0.2, max_relative = 1e-13);
        }
    }

    #[test]
    fn remainder_is_radius_independent() {
        let sp = build_superpotential(&paper(0.1), 1, -0.7).unwrap();
        let grid = log_grid(0.05, 30.0, 200).unwrap();
        let spread = remainder_spread(&sp, &grid).unwrap();
        assert!(spread <= 1e-9 * sp.remainder().abs().max(1.0), "{spread}");
        assert_relative_eq!(sp.remainder_at(2.0).unwrap(), sp.remainder(), max_relative = 1e-9);
    }

    #[test]
    fn shape_invariance_reproduces_the_table() {
        let s = StateIndex::paper_table(0, 0);
        let e = energy_from_shape_invariance(&paper(0.05), &s).unwrap().lowest();
        assert!((e.energy + 0.995440).abs() < 1e-5);
        let nu = solve_level(&paper(0.05), &s).unwrap().lowest();
        assert!((e.energy - nu.energy).abs() <= 1e-10);
    }

    #[test]
    fn ground_state_vanishes_at_both_ends() {
        let p = paper(0.15);
        let e = solve_level(&p, &StateIndex::nu(0, 1)).unwrap().lowest();
        let sp = build_superpotential(&p, 1, e.energy).unwrap();
        assert_eq!(sp.ground_state(0.0).unwrap(), 0.0);
        assert!(sp.ground_state(1e-6).unwrap() < 1e-6);
        assert!(sp.ground_state(400.0).unwrap() < 1e-10);
        assert!(sp.ground_state(3.0).unwrap() > 0.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn nu_and_susy_expressions_agree(
            delta in 0.01f64..0.5,
            l in 0u32..5,
            q in 0u32..6,
            alpha_sq in -2.0f64..5.0,
            beta_sq in -5.0f64..50.0,
        ) {
            let nu = spectrum::squared_condition(delta, alpha_sq, beta_sq, l, q);
            let susy = squared_condition(delta, alpha_sq, beta_sq, l, q);
            prop_assert_eq!(nu.is_some(), susy.is_some());
            if let (Some(a), Some(b)) = (nu, susy) {
                // Both are squares of differences of O(terms) quantities;
                // near a cancellation the summand size sets the scale.
                let t = 0.25 + alpha_sq + f64::from(l * (l + 1));
                let g = delta * (1.0 + 2.0 * t.sqrt()) + 2.0 * f64::from(q) * delta;
                let terms = 0.5 * g + 2.0 * delta * delta * (alpha_sq.abs() + beta_sq.abs()) / g;
                let scale = a.abs().max(b.abs()).max(terms * terms);
                prop_assert!((a - b).abs() <= 1e-12 * scale, "{} vs {}", a, b);
            }
        }

        #[test]
        fn susy_and_nu_solvers_agree(delta in 0.05f64..0.2, l in 0u32..3, n_r in 0u32..3, published in any::<bool>()) {
            let branch = if published { Branch::Published } else { Branch::Decaying };
            let conv = if published { Convention::PaperTable } else { Convention::Nu };
            let s = StateIndex::new(n_r, l, conv, branch);
            let a = solve_level(&paper(delta), &s).unwrap();
            let b = energy_from_shape_invariance(&paper(delta), &s).unwrap();
            prop_assert_eq!(a.roots.len(), b.roots.len());
            for (x, y) in a.roots.iter().zip(&b.roots) {
                prop_assert!((x.energy - y.energy).abs() <= 1e-10);
            }
        }
    }
}
