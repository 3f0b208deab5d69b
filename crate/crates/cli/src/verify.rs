//! Property suite behind `kgscreen verify`.

use kgscreen::oracle::{extrapolated_solve, GridSpec};
use kgscreen::potential::{log_grid, ModelParams};
use kgscreen::specfun::QuadratureSpec;
use kgscreen::spectrum::{self, coulomb_energy, solve_level, solve_special_case, SpecialCase};
use kgscreen::susy::{self, build_superpotential, energy_from_shape_invariance, riccati_check};
use kgscreen::wavefunction::build_wavefunction;
use kgscreen::{Error, StateIndex};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::reference::{DELTAS, LABELS};
use crate::Result;

pub const IDENTITY_TOL: f64 = 1e-10;
pub const ROOT_TOL: f64 = 1e-9;
pub const RICCATI_TOL: f64 = 1e-9;
pub const NORM_TOL: f64 = 1e-8;
pub const ORACLE_TOL: f64 = 1e-3;
pub const COULOMB_TOL: f64 = 1e-3;
pub const SPECIAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct Property {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub properties: Vec<Property>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(|p| p.pass)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for p in &self.properties {
            out.push_str(&format!("{} {}: {}\n", if p.pass { "PASS" } else { "FAIL" }, p.name, p.detail));
        }
        let passed = self.properties.iter().filter(|p| p.pass).count();
        out.push_str(&format!("verify: {passed} of {} properties passed\n", self.properties.len()));
        out
    }
}

fn property(name: &'static str, pass: bool, detail: String) -> Property {
    Property { name, pass, detail }
}

fn state(cfg: &RunConfig, label: &str) -> Result<StateIndex> {
    Ok(StateIndex::from_label(label, cfg.convention, cfg.branch)?)
}

fn nu_susy_identity(cfg: &RunConfig) -> Result<Property> {
    let mut worst = 0.0_f64;
    let mut compared = 0;
    for &delta in &DELTAS {
        let p = cfg.params(delta)?;
        for i in 0..40 {
            let e = -0.995 + 1.99 * i as f64 / 39.0;
            let (alpha_sq, beta_sq) = spectrum::couplings(&p, e)?;
            for l in 0..=5 {
                for q in 0..=7 {
                    let (Some(a), Some(b)) = (
                        spectrum::squared_condition(delta, alpha_sq, beta_sq, l, q),
                        susy::squared_condition(delta, alpha_sq, beta_sq, l, q),
                    ) else {
                        continue;
                    };
                    compared += 1;
                    let scale = a.abs().max(b.abs());
                    if scale > 0.0 {
                        worst = worst.max((a - b).abs() / scale);
                    }
                }
            }
        }
    }
    let mut worst_root = 0.0_f64;
    let mut count_mismatch = Vec::new();
    for &delta in &DELTAS {
        let p = cfg.params(delta)?;
        for label in LABELS {
            let s = state(cfg, label)?;
            let a = solve_level(&p, &s)?.energies();
            let b = energy_from_shape_invariance(&p, &s)?.energies();
            if a.len() != b.len() {
                count_mismatch.push(format!("{label}@{delta}"));
                continue;
            }
            for (x, y) in a.iter().zip(&b) {
                worst_root = worst_root.max((x - y).abs());
            }
        }
    }
    Ok(property(
        "NU-SUSY identity",
        compared > 0 && worst <= IDENTITY_TOL && worst_root <= ROOT_TOL && count_mismatch.is_empty(),
        format!(
            "{compared} tuples, max relative deviation {worst:.2e}; roots max |dE| {worst_root:.2e}; root-count mismatches: {}",
            if count_mismatch.is_empty() { "none".into() } else { count_mismatch.join(" ") }
        ),
    ))
}

fn riccati(cfg: &RunConfig) -> Result<Property> {
    let grid = log_grid(0.1, 40.0, 400)?;
    let mut worst = 0.0_f64;
    let mut checked = 0;
    for &delta in &DELTAS {
        let p = cfg.params(delta)?;
        for l in 0..4 {
            let s = StateIndex::new(0, l, cfg.convention, cfg.branch);
            for lvl in solve_level(&p, &s)?.roots {
                let sp = build_superpotential(&p, l, lvl.energy)?;
                worst = worst.max(riccati_check(&sp, &p, l, &grid)?.max_rel);
                checked += 1;
            }
        }
    }
    Ok(property(
        "Riccati residual",
        checked > 0 && worst <= RICCATI_TOL,
        format!("{checked} ground states, max relative deviation {worst:.2e}"),
    ))
}

fn normalization_and_nodes(cfg: &RunConfig) -> Result<(Property, Property)> {
    let spec = QuadratureSpec::default();
    let factor = cfg.norm_fault.unwrap_or(1.0);
    let mut worst = 0.0_f64;
    let mut built = 0;
    let mut node_failures = Vec::new();
    for &delta in &DELTAS {
        let p = cfg.params(delta)?;
        for label in LABELS {
            let s = state(cfg, label)?;
            for lvl in solve_level(&p, &s)?.roots {
                let wf = match build_wavefunction(&p, &lvl, &s) {
                    Ok(wf) => wf.scaled(factor),
                    Err(Error::AbsentLevel) => continue,
                    Err(e) => return Err(e.into()),
                };
                built += 1;
                worst = worst.max((wf.normalization_check(&spec)? - 1.0).abs());
                let nodes = wf.count_nodes(20_000)?;
                if nodes != s.n_r as usize {
                    node_failures.push(format!("{label}@{delta}: {nodes}"));
                }
            }
        }
    }
    let norm = property(
        "normalization",
        built > 0 && worst <= NORM_TOL,
        format!("{built} eigenfunctions, max |integral - 1| {worst:.2e}"),
    );
    let nodes = property(
        "node count",
        built > 0 && node_failures.is_empty(),
        format!(
            "{built} eigenfunctions; wrong node counts: {}",
            if node_failures.is_empty() { "none".into() } else { node_failures.join(" ") }
        ),
    );
    Ok((norm, nodes))
}

fn oracle(cfg: &RunConfig) -> Result<Property> {
    let delta = 0.05;
    let p = cfg.params(delta)?;
    let grid = GridSpec::default();
    let probes: Vec<(u32, usize, f64)> = [(0u32, 0usize), (1, 0), (1, 1)]
        .iter()
        .flat_map(|&(l, k)| [-0.99, 0.5].map(|g| (l, k, g)))
        .collect();
    let solved = probes
        .par_iter()
        .map(|&(l, k, g)| extrapolated_solve(&p, l, k, g, &grid).map(|r| (l, k, g, r)))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let mut worst = 0.0_f64;
    let mut found = 0;
    let mut lines = Vec::new();
    for (l, k, g, result) in solved {
        let Some(ex) = result else {
            lines.push(format!("l={l} k={k} guess={g}: none"));
            continue;
        };
        found += 1;
        let s = StateIndex::new(k as u32, l, cfg.convention, cfg.branch);
        let err = solve_level(&p, &s)?
            .nearest(ex.energy)
            .map_or(f64::INFINITY, |lvl| (lvl.energy - ex.energy).abs());
        worst = worst.max(err);
        lines.push(format!("l={l} k={k} guess={g}: E={:.6} |dE|={err:.1e}", ex.energy));
    }
    Ok(property(
        "oracle cross-check",
        found > 0 && worst <= ORACLE_TOL,
        format!("delta={delta}; {}", lines.join("; ")),
    ))
}

fn special_cases(cfg: &RunConfig) -> Result<Property> {
    let base = cfg.params(0.10)?;
    let mut roots = 0;
    let mut worst = 0.0_f64;
    let mut problems = Vec::new();
    for case in SpecialCase::ALL {
        let forced = case.force(&base);
        for l in 0..=2 {
            let s = StateIndex::new(0, l, cfg.convention, cfg.branch);
            if case == SpecialCase::SWave && l != 0 {
                if solve_special_case(case, &forced, &s).is_ok() {
                    problems.push(format!("{} accepted l={l}", case.name()));
                }
                continue;
            }
            for lvl in solve_special_case(case, &forced, &s)?.roots {
                roots += 1;
                let r = case.reduced_residual(&forced, &s, lvl.energy)?;
                let scale = 1.0 + r.numerator.abs() / r.denominator.abs();
                worst = worst.max(r.value.abs() / scale);
            }
        }
        let s = StateIndex::new(0, 0, cfg.convention, cfg.branch);
        let conflicting = case.force(&base) != base && case.check(&base, &s).is_ok();
        if conflicting {
            problems.push(format!("{} accepted unforced parameters", case.name()));
        }
    }
    Ok(property(
        "special-case restrictions",
        worst <= SPECIAL_TOL && problems.is_empty(),
        format!(
            "{} cases, {roots} roots, max reduced residual {worst:.2e}; violations: {}",
            SpecialCase::ALL.len(),
            if problems.is_empty() { "none".into() } else { problems.join(", ") }
        ),
    ))
}

fn coulomb(cfg: &RunConfig) -> Result<Property> {
    let mut worst = 0.0_f64;
    let mut missing = Vec::new();
    for v0 in [0.5, 1.0] {
        let p = ModelParams::new(cfg.mass, 1e-3, v0, 0.0, 1.0, 0.0)?;
        let s = StateIndex::new(0, 0, cfg.convention, cfg.branch);
        let lvl = solve_level(&p, &s)?.lowest();
        if !lvl.exists {
            missing.push(format!("V0={v0}"));
            continue;
        }
        worst = worst.max((lvl.energy - coulomb_energy(v0, 0, 0, cfg.mass)).abs());
    }
    Ok(property(
        "Coulomb limit",
        missing.is_empty() && worst <= COULOMB_TOL,
        format!(
            "delta=1e-3, max |dE| {worst:.2e}; missing: {}",
            if missing.is_empty() { "none".into() } else { missing.join(" ") }
        ),
    ))
}

pub fn run(cfg: &RunConfig) -> Result<Report> {
    let (norm, nodes) = normalization_and_nodes(cfg)?;
    Ok(Report {
        properties: vec![
            nu_susy_identity(cfg)?,
            riccati(cfg)?,
            norm,
            nodes,
            oracle(cfg)?,
            special_cases(cfg)?,
            coulomb(cfg)?,
        ],
    })
}
