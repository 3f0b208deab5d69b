//! CSV-producing subcommands.

use std::fmt::Write as _;

use kgscreen::potential::{approx_potential, approximation_error, exact_potential};
use kgscreen::spectrum::solve_level;
use kgscreen::wavefunction::build_wavefunction;
use kgscreen::{Branch, EnergyLevel, StateIndex};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::format::{fixed6, sig9};
use crate::reference::{self, DELTAS, LABELS};
use crate::Result;

fn branch_name(b: Branch) -> &'static str {
    match b {
        Branch::Decaying => "decaying",
        Branch::Published => "published",
    }
}

fn state_of(cfg: &RunConfig, n_r: u32, l: u32) -> StateIndex {
    StateIndex::new(n_r, l, cfg.convention, cfg.branch)
}

fn label_state(cfg: &RunConfig, label: &str) -> Result<StateIndex> {
    Ok(StateIndex::from_label(label, cfg.convention, cfg.branch)?)
}

fn lowest(cfg: &RunConfig, delta: f64, state: &StateIndex) -> Result<EnergyLevel> {
    Ok(solve_level(&cfg.params(delta)?, state)?.lowest())
}

fn opt_energy(level: &EnergyLevel, fmt: fn(f64) -> String) -> String {
    if level.exists {
        fmt(level.energy)
    } else {
        String::new()
    }
}

/// Energies of the eight tabulated states at the four tabulated deltas.
pub fn table(cfg: &RunConfig) -> Result<String> {
    let mut out = String::from("delta,state,n_r,l,q_used,E,residual,exists,diagnostic\n");
    for (i, &delta) in DELTAS.iter().enumerate() {
        for (j, label) in LABELS.iter().enumerate() {
            let state = label_state(cfg, label)?;
            let level = lowest(cfg, delta, &state)?;
            let diagnostic = if cfg.is_paper_model() {
                reference::diagnose(i, j, level.exists.then_some(level.energy))
            } else {
                "no_reference".into()
            };
            let residual = if level.exists { sig9(level.residual) } else { String::new() };
            writeln!(
                out,
                "{},{label},{},{},{},{},{residual},{},{diagnostic}",
                sig9(delta),
                state.n_r,
                state.l,
                level.q_used,
                opt_energy(&level, fixed6),
                level.exists,
            )
            .expect("write to string");
        }
    }
    Ok(out)
}

fn selected_states(cfg: &RunConfig) -> Result<Vec<StateIndex>> {
    match (cfg.n_r, cfg.l) {
        (None, None) => LABELS.iter().map(|label| label_state(cfg, label)).collect(),
        (n_r, l) => Ok(vec![state_of(cfg, n_r.unwrap_or(0), l.unwrap_or(0))]),
    }
}

/// Energy against delta for the selected states (`--nr`/`--l`, or the
/// tabulated set).
pub fn sweep_delta(cfg: &RunConfig) -> Result<String> {
    let steps = cfg.delta_steps;
    let deltas: Vec<f64> = (0..steps)
        .map(|i| {
            if steps == 1 {
                cfg.delta_min
            } else {
                cfg.delta_min + (cfg.delta_max - cfg.delta_min) * i as f64 / (steps - 1) as f64
            }
        })
        .collect();
    let states = selected_states(cfg)?;
    let jobs: Vec<(StateIndex, f64)> = states
        .iter()
        .flat_map(|s| deltas.iter().map(move |&d| (*s, d)))
        .collect();
    let levels = jobs
        .par_iter()
        .map(|(s, d)| lowest(cfg, *d, s))
        .collect::<Result<Vec<_>>>()?;

    let mut out = String::from("state,n_r,l,delta,E,exists\n");
    for ((state, delta), level) in jobs.iter().zip(&levels) {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            state.label(),
            state.n_r,
            state.l,
            sig9(*delta),
            opt_energy(level, sig9),
            level.exists
        )
        .expect("write to string");
    }
    Ok(out)
}

/// Energy against n_r for each l at fixed delta.
pub fn sweep_n(cfg: &RunConfig) -> Result<String> {
    let ls: Vec<u32> = match cfg.l {
        Some(l) => vec![l],
        None => (0..=3).collect(),
    };
    let jobs: Vec<StateIndex> = ls
        .iter()
        .flat_map(|&l| (0..=cfg.nr_max).map(move |n| (n, l)))
        .map(|(n, l)| state_of(cfg, n, l))
        .collect();
    let levels = jobs
        .par_iter()
        .map(|s| lowest(cfg, cfg.delta, s))
        .collect::<Result<Vec<_>>>()?;

    let mut out = String::from("l,n_r,state,delta,E,exists\n");
    for (state, level) in jobs.iter().zip(&levels) {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            state.l,
            state.n_r,
            state.label(),
            sig9(cfg.delta),
            opt_energy(level, sig9),
            level.exists
        )
        .expect("write to string");
    }
    Ok(out)
}

fn radii(cfg: &RunConfig) -> Vec<f64> {
    let n = cfg.samples;
    (0..n)
        .map(|i| {
            if i + 1 == n {
                cfg.r_max
            } else {
                cfg.r_min + (cfg.r_max - cfg.r_min) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

/// Normalized radial function of the selected states (`--nr` or n_r = 0..=2).
pub fn wavefunction(cfg: &RunConfig) -> Result<String> {
    let l = cfg.l.unwrap_or(0);
    let nrs: Vec<u32> = match cfg.n_r {
        Some(n) => vec![n],
        None => (0..=cfg.nr_max.min(2)).collect(),
    };
    let params = cfg.params(cfg.delta)?;
    let rs = radii(cfg);
    let mut out = String::from("state,n_r,l,E,r,chi\n");
    for n_r in nrs {
        let state = state_of(cfg, n_r, l);
        let level = solve_level(&params, &state)?.lowest();
        let wf = build_wavefunction(&params, &level, &state)?;
        let e = sig9(level.energy);
        for &r in &rs {
            let chi = wf.eval_chi(r)?;
            writeln!(out, "{},{n_r},{l},{e},{},{}", state.label(), sig9(r), sig9(chi)).expect("write to string");
        }
    }
    Ok(out)
}

/// Exact and approximated potential and their difference.
pub fn potential(cfg: &RunConfig) -> Result<String> {
    let params = cfg.params(cfg.delta)?;
    let mut out = String::from("r,V_exact,V_approx,Delta\n");
    for r in radii(cfg) {
        writeln!(
            out,
            "{},{},{},{}",
            sig9(r),
            sig9(exact_potential(&params, r)?),
            sig9(approx_potential(&params, r)?),
            sig9(approximation_error(&params, r)?)
        )
        .expect("write to string");
    }
    Ok(out)
}

/// Every root of one state.
pub fn solve(cfg: &RunConfig) -> Result<String> {
    let state = state_of(cfg, cfg.n_r.unwrap_or(0), cfg.l.unwrap_or(0));
    let levels = solve_level(&cfg.params(cfg.delta)?, &state)?;
    let mut out = String::from("delta,state,n_r,l,q_used,branch,E,residual,exists\n");
    let rows = if levels.exists() { levels.roots.clone() } else { vec![levels.lowest()] };
    for level in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            sig9(cfg.delta),
            state.label(),
            state.n_r,
            state.l,
            level.q_used,
            branch_name(level.branch),
            opt_energy(&level, sig9),
            if level.exists { sig9(level.residual) } else { String::new() },
            level.exists
        )
        .expect("write to string");
    }
    Ok(out)
}
