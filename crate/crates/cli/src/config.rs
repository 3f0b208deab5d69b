//! Command-line flags, `key = value` config files and their resolution into
//! a [`RunConfig`]. Flags override file values.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use kgscreen::{Branch, Convention, ModelParams};

use crate::{CliError, Result};

#[derive(Debug, Parser)]
#[command(name = "kgscreen", version, about = "Klein-Gordon bound states for Manning-Rosen plus Yukawa-class potentials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energies of 1s..4f for delta in {0.05, 0.10, 0.15, 0.20}.
    Table(Options),
    /// Energy versus delta.
    SweepDelta(Options),
    /// Energy versus n_r for each l.
    SweepN(Options),
    /// Samples of the normalized radial wave function.
    Wavefunction(Options),
    /// Exact and approximated potential and their difference.
    Potential(Options),
    /// Property suite; exit status 1 if any property fails.
    Verify(Options),
    /// All roots of one state.
    Solve(Options),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Table,
    SweepDelta,
    SweepN,
    Wavefunction,
    Potential,
    Verify,
    Solve,
}

impl Command {
    pub fn split(self) -> (CommandKind, Options) {
        match self {
            Command::Table(o) => (CommandKind::Table, o),
            Command::SweepDelta(o) => (CommandKind::SweepDelta, o),
            Command::SweepN(o) => (CommandKind::SweepN, o),
            Command::Wavefunction(o) => (CommandKind::Wavefunction, o),
            Command::Potential(o) => (CommandKind::Potential, o),
            Command::Verify(o) => (CommandKind::Verify, o),
            Command::Solve(o) => (CommandKind::Solve, o),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    /// Quantization index is the radial node count.
    Nu,
    /// Quantization index is the principal quantum number.
    Paper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Decaying,
    Published,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// Force M=1, V0=1, V0'=0.1, eta=0.75, A=1/delta (overrides the
    /// individual parameter flags).
    #[arg(long)]
    pub preset_paper: bool,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub v0: Option<f64>,
    #[arg(long)]
    pub v0p: Option<f64>,
    #[arg(long)]
    pub eta: Option<f64>,
    /// Manning-Rosen A; defaults to 1/delta.
    #[arg(long = "a-param")]
    pub a_param: Option<f64>,
    #[arg(long)]
    pub mass: Option<f64>,
    #[arg(long)]
    pub l: Option<u32>,
    #[arg(long)]
    pub nr: Option<u32>,
    #[arg(long, value_enum)]
    pub convention: Option<ConventionArg>,
    /// Root family; defaults to `published` with `--convention paper` and
    /// `decaying` with `--convention nu`.
    #[arg(long, value_enum)]
    pub branch: Option<BranchArg>,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// `key = value` file; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// sweep-delta: smallest delta.
    #[arg(long)]
    pub delta_min: Option<f64>,
    /// sweep-delta: largest delta.
    #[arg(long)]
    pub delta_max: Option<f64>,
    /// sweep-delta: number of delta values.
    #[arg(long)]
    pub delta_steps: Option<usize>,
    /// sweep-n: largest n_r.
    #[arg(long)]
    pub nr_max: Option<u32>,
    /// wavefunction/potential: smallest radius.
    #[arg(long)]
    pub r_min: Option<f64>,
    /// wavefunction/potential: largest radius.
    #[arg(long)]
    pub r_max: Option<f64>,
    /// wavefunction/potential: number of radii.
    #[arg(long)]
    pub samples: Option<usize>,
    /// verify: scale normalization constants by this factor.
    #[arg(long, hide = true)]
    pub inject_norm_fault: Option<f64>,
}

/// Fully resolved settings of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub preset_paper: bool,
    pub mass: f64,
    pub delta: f64,
    pub v0: f64,
    pub v0_prime: f64,
    pub eta: f64,
    /// `None` means `A = 1/delta` at every delta.
    pub a: Option<f64>,
    pub l: Option<u32>,
    pub n_r: Option<u32>,
    pub convention: Convention,
    pub branch: Branch,
    pub out: Option<PathBuf>,
    pub delta_min: f64,
    pub delta_max: f64,
    pub delta_steps: usize,
    pub nr_max: u32,
    pub r_min: f64,
    pub r_max: f64,
    pub samples: usize,
    pub norm_fault: Option<f64>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses flat `key = value` lines; `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("config line {}: expected key = value", i + 1)))?;
        let key = key.trim().replace('_', "-");
        if map.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(usage(format!("config line {}: duplicate key {key}", i + 1)));
        }
    }
    Ok(map)
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| usage(format!("config: invalid value {value:?} for {key}")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(usage(format!("config: invalid boolean {value:?} for {key}"))),
    }
}

fn parse_enum<T: ValueEnum>(key: &str, value: &str) -> Result<T> {
    T::from_str(value, true).map_err(|_| usage(format!("config: invalid value {value:?} for {key}")))
}

/// Options read from a config file.
pub fn options_from_file(path: &Path) -> Result<Options> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
    options_from_map(&parse_config_text(&text)?)
}

pub fn options_from_map(map: &BTreeMap<String, String>) -> Result<Options> {
    let mut o = Options::default();
    for (key, value) in map {
        let v = value.as_str();
        match key.as_str() {
            "preset-paper" => o.preset_paper = parse_bool(key, v)?,
            "delta" => o.delta = Some(parse_value(key, v)?),
            "v0" => o.v0 = Some(parse_value(key, v)?),
            "v0p" => o.v0p = Some(parse_value(key, v)?),
            "eta" => o.eta = Some(parse_value(key, v)?),
            "a-param" => o.a_param = Some(parse_value(key, v)?),
            "mass" => o.mass = Some(parse_value(key, v)?),
            "l" => o.l = Some(parse_value(key, v)?),
            "nr" => o.nr = Some(parse_value(key, v)?),
            "convention" => o.convention = Some(parse_enum(key, v)?),
            "branch" => o.branch = Some(parse_enum(key, v)?),
            "out" => o.out = Some(PathBuf::from(v)),
            "delta-min" => o.delta_min = Some(parse_value(key, v)?),
            "delta-max" => o.delta_max = Some(parse_value(key, v)?),
            "delta-steps" => o.delta_steps = Some(parse_value(key, v)?),
            "nr-max" => o.nr_max = Some(parse_value(key, v)?),
            "r-min" => o.r_min = Some(parse_value(key, v)?),
            "r-max" => o.r_max = Some(parse_value(key, v)?),
            "samples" => o.samples = Some(parse_value(key, v)?),
            _ => return Err(usage(format!("config: unknown key {key}"))),
        }
    }
    Ok(o)
}

impl Options {
    /// Field-wise `self` if set, else `fallback`.
    pub fn or(self, fallback: Options) -> Options {
        Options {
            preset_paper: self.preset_paper || fallback.preset_paper,
            delta: self.delta.or(fallback.delta),
            v0: self.v0.or(fallback.v0),
            v0p: self.v0p.or(fallback.v0p),
            eta: self.eta.or(fallback.eta),
            a_param: self.a_param.or(fallback.a_param),
            mass: self.mass.or(fallback.mass),
            l: self.l.or(fallback.l),
            nr: self.nr.or(fallback.nr),
            convention: self.convention.or(fallback.convention),
            branch: self.branch.or(fallback.branch),
            out: self.out.or(fallback.out),
            config: self.config.or(fallback.config),
            delta_min: self.delta_min.or(fallback.delta_min),
            delta_max: self.delta_max.or(fallback.delta_max),
            delta_steps: self.delta_steps.or(fallback.delta_steps),
            nr_max: self.nr_max.or(fallback.nr_max),
            r_min: self.r_min.or(fallback.r_min),
            r_max: self.r_max.or(fallback.r_max),
            samples: self.samples.or(fallback.samples),
            inject_norm_fault: self.inject_norm_fault.or(fallback.inject_norm_fault),
        }
    }
}

fn check_range(name: &str, value: f64, lo: f64, hi: f64, open_lo: bool) -> Result<()> {
    let above = if open_lo { value > lo } else { value >= lo };
    if above && value <= hi && value.is_finite() {
        Ok(())
    } else {
        let bracket = if open_lo { "(" } else { "[" };
        Err(usage(format!("{name} = {value} outside {bracket}{lo}, {hi}]")))
    }
}

impl RunConfig {
    pub fn resolve(command: CommandKind, flags: Options) -> Result<Self> {
        let file = match &flags.config {
            Some(path) => options_from_file(path)?,
            None => Options::default(),
        };
        let o = flags.or(file);

        let default_convention = match command {
            CommandKind::Table | CommandKind::SweepDelta | CommandKind::SweepN | CommandKind::Wavefunction => {
                ConventionArg::Paper
            }
            CommandKind::Verify | CommandKind::Solve | CommandKind::Potential => ConventionArg::Nu,
        };
        let convention = o.convention.unwrap_or(default_convention);
        let branch = o.branch.unwrap_or(match convention {
            ConventionArg::Paper => BranchArg::Published,
            ConventionArg::Nu => BranchArg::Decaying,
        });
        let default_delta = if command == CommandKind::Wavefunction { 0.15 } else { 0.05 };

        let mut cfg = RunConfig {
            preset_paper: o.preset_paper,
            mass: o.mass.unwrap_or(1.0),
            delta: o.delta.unwrap_or(default_delta),
            v0: o.v0.unwrap_or(1.0),
            v0_prime: o.v0p.unwrap_or(0.1),
            eta: o.eta.unwrap_or(0.75),
            a: o.a_param,
            l: o.l,
            n_r: o.nr,
            convention: match convention {
                ConventionArg::Nu => Convention::Nu,
                ConventionArg::Paper => Convention::PaperTable,
            },
            branch: match branch {
                BranchArg::Decaying => Branch::Decaying,
                BranchArg::Published => Branch::Published,
            },
            out: o.out,
            delta_min: o.delta_min.unwrap_or(0.01),
            delta_max: o.delta_max.unwrap_or(0.30),
            delta_steps: o.delta_steps.unwrap_or(30),
            nr_max: o.nr_max.unwrap_or(5),
            r_min: o.r_min.unwrap_or(if command == CommandKind::Potential { 0.01 } else { 0.0 }),
            r_max: o.r_max.unwrap_or(20.0),
            samples: o.samples.unwrap_or(1000),
            norm_fault: o.inject_norm_fault,
        };
        if cfg.preset_paper {
            cfg.mass = 1.0;
            cfg.v0 = 1.0;
            cfg.v0_prime = 0.1;
            cfg.eta = 0.75;
            cfg.a = None;
        }
        cfg.validate(command)?;
        Ok(cfg)
    }

    fn validate(&self, command: CommandKind) -> Result<()> {
        check_range("delta", self.delta, 0.0, 0.3, true)?;
        if let Some(l) = self.l {
            if l > 5 {
                return Err(usage(format!("l = {l} outside [0, 5]")));
            }
        }
        if let Some(n) = self.n_r {
            if n > 5 {
                return Err(usage(format!("nr = {n} outside [0, 5]")));
            }
        }
        if self.nr_max > 5 {
            return Err(usage(format!("nr-max = {} outside [0, 5]", self.nr_max)));
        }
        if command == CommandKind::SweepDelta {
            check_range("delta-min", self.delta_min, 0.0, 0.3, true)?;
            check_range("delta-max", self.delta_max, 0.0, 0.3, true)?;
            if self.delta_min > self.delta_max || self.delta_steps < 1 {
                return Err(usage("delta range must satisfy delta-min <= delta-max, delta-steps >= 1"));
            }
        }
        if matches!(command, CommandKind::Wavefunction | CommandKind::Potential) {
            check_range("r-max", self.r_max, 0.0, 20.0, true)?;
            check_range("r-min", self.r_min, 0.0, self.r_max, command == CommandKind::Potential)?;
            if self.samples < 2 {
                return Err(usage("samples must be at least 2"));
            }
        }
        if let Some(f) = self.norm_fault {
            if !f.is_finite() {
                return Err(usage("fault factor must be finite"));
            }
        }
        self.params(self.delta)?;
        Ok(())
    }

    /// Model parameters at screening `delta`.
    pub fn params(&self, delta: f64) -> Result<ModelParams> {
        let a = self.a.unwrap_or(1.0 / delta);
        ModelParams::new(self.mass, delta, self.v0, self.v0_prime, self.eta, a)
            .map_err(|e| usage(format!("invalid model parameters: {e}")))
    }

    /// The parameters are exactly the published preset.
    pub fn is_paper_model(&self) -> bool {
        self.mass == 1.0 && self.v0 == 1.0 && self.v0_prime == 0.1 && self.eta == 0.75 && self.a.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flags() -> Options {
        Options::default()
    }

    #[test]
    fn config_text_parsing() {
        let map = parse_config_text("# comment\ndelta = 0.1  # trailing\n\nv0=2\nnr_max = 3\n").unwrap();
        assert_eq!(map["delta"], "0.1");
        assert_eq!(map["v0"], "2");
        assert_eq!(map["nr-max"], "3");
        assert!(parse_config_text("delta 0.1").is_err());
        assert!(parse_config_text("delta=1\ndelta=2").is_err());
    }

    #[test]
    fn unknown_keys_and_bad_values_are_rejected() {
        let bad_key = parse_config_text("colour = red").unwrap();
        assert!(options_from_map(&bad_key).is_err());
        let bad_value = parse_config_text("delta = fast").unwrap();
        assert!(options_from_map(&bad_value).is_err());
        let conv = parse_config_text("convention = NU\nbranch = published").unwrap();
        let o = options_from_map(&conv).unwrap();
        assert_eq!(o.convention, Some(ConventionArg::Nu));
        assert_eq!(o.branch, Some(BranchArg::Published));
    }

    #[test]
    fn flags_override_file() {
        let file = options_from_map(&parse_config_text("delta = 0.1\nv0 = 2").unwrap()).unwrap();
        let cli = Options {
            delta: Some(0.2),
            ..flags()
        };
        let merged = cli.or(file);
        assert_eq!(merged.delta, Some(0.2));
        assert_eq!(merged.v0, Some(2.0));
    }

    #[test]
    fn defaults_follow_the_command() {
        let table = RunConfig::resolve(CommandKind::Table, flags()).unwrap();
        assert_eq!((table.convention, table.branch), (Convention::PaperTable, Branch::Published));
        let verify = RunConfig::resolve(CommandKind::Verify, flags()).unwrap();
        assert_eq!((verify.convention, verify.branch), (Convention::Nu, Branch::Decaying));
        let nu_table = RunConfig::resolve(
            CommandKind::Table,
            Options {
                convention: Some(ConventionArg::Nu),
                ..flags()
            },
        )
        .unwrap();
        assert_eq!(nu_table.branch, Branch::Decaying);
    }

    #[test]
    fn preset_overrides_parameter_flags() {
        let cfg = RunConfig::resolve(
            CommandKind::Solve,
            Options {
                preset_paper: true,
                v0: Some(3.0),
                a_param: Some(7.0),
                delta: Some(0.1),
                ..flags()
            },
        )
        .unwrap();
        assert!(cfg.is_paper_model());
        assert_eq!(cfg.params(0.1).unwrap(), ModelParams::paper_preset(0.1).unwrap());
    }

    #[test]
    fn ranges_are_checked() {
        let bad = |o: Options, c| RunConfig::resolve(c, o).is_err();
        assert!(bad(Options { delta: Some(0.5), ..flags() }, CommandKind::Solve));
        assert!(bad(Options { delta: Some(0.0), ..flags() }, CommandKind::Solve));
        assert!(bad(Options { nr: Some(6), ..flags() }, CommandKind::Solve));
        assert!(bad(Options { l: Some(6), ..flags() }, CommandKind::Solve));
        assert!(bad(Options { r_max: Some(25.0), ..flags() }, CommandKind::Potential));
        assert!(bad(Options { delta_min: Some(0.2), delta_max: Some(0.1), ..flags() }, CommandKind::SweepDelta));
        assert!(bad(Options { mass: Some(-1.0), ..flags() }, CommandKind::Solve));
    }
}
