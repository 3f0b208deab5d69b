//! Energy quantization condition and bound-state solver.
//!
//! With `u = E + M` the energy enters through
//!
//! ```text
//! eps     = sqrt(M^2 - E^2) / (2 delta)
//! alpha^2 = V014 u / (2 delta^2)          (signed)
//! beta^2  = V023 u / (2 delta^2)          (signed)
//! w       = sqrt(1/4 + alpha^2 + l(l+1))
//! N       = beta^2 - l(l+1) - 1/2 - q(q+1) - (2q+1) w
//! D       = q + 1/2 + w
//! ```
//!
//! and a level is a root of the unsquared residual `f = eps + sigma N/(2D)`.
//! Only `f^2`-level information fixes `|N|`; the sign `sigma` selects which
//! root family of the squared equation is kept:
//!
//! - [`Branch::Decaying`] (`sigma = -1`, roots need `N > 0`): the family
//!   whose eigenfunctions `s^eps (1-s)^kappa P_q(s)` are normalizable with
//!   `q` the radial node count. This is what a direct numerical solution of
//!   the radial equation reproduces.
//! - [`Branch::Published`] (`sigma = +1`, roots need `N < 0`): the family
//!   used by the published tables, where `q` is the principal quantum
//!   number.
//!
//! Which integer plays the role of `q` is set by the [`Convention`].

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::math::sqrt;
use crate::potential::{derive_coefficients, ModelParams};
use crate::roots;
use crate::{Error, Result};

/// Number of uniform scan points over `(-M, M)`.
pub const SCAN_POINTS: usize = 4001;
/// Relative distance of the scan ends from `-M` and `M`.
pub const SCAN_MARGIN: f64 = 1e-9;

/// Which integer the quantization index `q` is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// `q = n_r`.
    Nu,
    /// `q = n_r + l + 1`.
    PaperTable,
}

/// Root family of the squared quantization condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `eps = +N/(2D)`, `N > 0`.
    Decaying,
    /// `eps = -N/(2D)`, `N < 0`.
    Published,
}

impl Branch {
    /// The sign `sigma` in `f = eps + sigma N/(2D)`.
    pub fn sigma(self) -> f64 {
        match self {
            Branch::Decaying => -1.0,
            Branch::Published => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StateIndex {
    pub n_r: u32,
    pub l: u32,
    pub convention: Convention,
    pub branch: Branch,
}

const SPECTROSCOPIC: &[u8] = b"spdfghiklmnoqrtuv";

impl StateIndex {
    pub fn new(n_r: u32, l: u32, convention: Convention, branch: Branch) -> Self {
        Self {
            n_r,
            l,
            convention,
            branch,
        }
    }

    /// Node-count indexing on the decaying branch.
    pub fn nu(n_r: u32, l: u32) -> Self {
        Self::new(n_r, l, Convention::Nu, Branch::Decaying)
    }

    /// Principal-number indexing on the published branch.
    pub fn paper_table(n_r: u32, l: u32) -> Self {
        Self::new(n_r, l, Convention::PaperTable, Branch::Published)
    }

    pub fn with_branch(self, branch: Branch) -> Self {
        Self { branch, ..self }
    }

    pub fn with_convention(self, convention: Convention) -> Self {
        Self { convention, ..self }
    }

    /// Principal quantum number `n = n_r + l + 1`.
    pub fn principal(&self) -> u32 {
        self.n_r + self.l + 1
    }

    /// Quantization index under the state's convention.
    pub fn q(&self) -> u32 {
        match self.convention {
            Convention::Nu => self.n_r,
            Convention::PaperTable => self.principal(),
        }
    }

    /// Spectroscopic label such as `3d`.
    pub fn label(&self) -> String {
        let mut s = alloc::format!("{}", self.principal());
        match SPECTROSCOPIC.get(self.l as usize) {
            Some(&c) => s.push(char::from(c)),
            None => s.push_str(&alloc::format!("[l={}]", self.l)),
        }
        s
    }

    /// Parses a spectroscopic label (`1s`, `4f`, ...).
    pub fn from_label(label: &str, convention: Convention, branch: Branch) -> Result<Self> {
        let bad = || Error::Domain {
            what: "state label",
            value: f64::NAN,
        };
        let label = label.trim();
        let split = label.find(|c: char| !c.is_ascii_digit()).ok_or_else(bad)?;
        let (digits, letter) = label.split_at(split);
        let n: u32 = digits.parse().map_err(|_| bad())?;
        let mut chars = letter.chars();
        let c = chars.next().ok_or_else(bad)?.to_ascii_lowercase();
        if chars.next().is_some() {
            return Err(bad());
        }
        let l = SPECTROSCOPIC
            .iter()
            .position(|&x| char::from(x) == c)
            .ok_or_else(bad)? as u32;
        if n < l + 1 {
            return Err(bad());
        }
        Ok(Self::new(n - l - 1, l, convention, branch))
    }
}

impl fmt::Display for StateIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Energy-dependent dimensionless parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessParams {
    pub epsilon: f64,
    pub alpha_sq: f64,
    pub beta_sq: f64,
    pub w: f64,
    pub kappa: f64,
}

fn check_energy(params: &ModelParams, energy: f64) -> Result<()> {
    params.validate()?;
    if !(energy.abs() < params.mass) {
        return Err(Error::Domain {
            what: "energy (must satisfy |E| < M)",
            value: energy,
        });
    }
    Ok(())
}

/// `(alpha^2, beta^2)` at energy `energy`.
pub fn couplings(params: &ModelParams, energy: f64) -> Result<(f64, f64)> {
    let c = derive_coefficients(params)?;
    let u = energy + params.mass;
    let scale = u / (2.0 * params.delta * params.delta);
    Ok((c.v014 * scale, c.v023 * scale))
}

/// `eps = sqrt(M^2 - E^2) / (2 delta)`.
pub fn epsilon(params: &ModelParams, energy: f64) -> f64 {
    sqrt((params.mass - energy) * (params.mass + energy)) / (2.0 * params.delta)
}

pub fn dimensionless(params: &ModelParams, l: u32, energy: f64) -> Result<DimensionlessParams> {
    check_energy(params, energy)?;
    let (alpha_sq, beta_sq) = couplings(params, energy)?;
    let t = discriminant(alpha_sq, l);
    if !(t >= 0.0) {
        return Err(Error::NegativeDiscriminant { energy, value: t });
    }
    let w = sqrt(t);
    Ok(DimensionlessParams {
        epsilon: epsilon(params, energy),
        alpha_sq,
        beta_sq,
        w,
        kappa: 0.5 + w,
    })
}

/// `T = 1/4 + alpha^2 + l(l+1)`.
pub fn discriminant(alpha_sq: f64, l: u32) -> f64 {
    0.25 + alpha_sq + centrifugal(l)
}

fn centrifugal(l: u32) -> f64 {
    f64::from(l) * f64::from(l + 1)
}

/// `(N, D)` of the quantization condition for index `q`.
pub fn numerator_denominator(alpha_sq: f64, beta_sq: f64, l: u32, q: u32) -> Option<(f64, f64)> {
    let t = discriminant(alpha_sq, l);
    if !(t >= 0.0) {
        return None;
    }
    let w = sqrt(t);
    let q = f64::from(q);
    let n = beta_sq - centrifugal(l) - 0.5 - q * (q + 1.0) - (2.0 * q + 1.0) * w;
    Some((n, q + 0.5 + w))
}

/// `M^2 - E^2` predicted by the squared quantization condition,
/// `delta^2 N^2 / D^2`.
pub fn squared_condition(delta: f64, alpha_sq: f64, beta_sq: f64, l: u32, q: u32) -> Option<f64> {
    let (n, d) = numerator_denominator(alpha_sq, beta_sq, l, q)?;
    let x = delta * n / d;
    Some(x * x)
}

/// Value of the unsquared residual at a trial energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    /// `f(E)`; `NaN` when invalid.
    pub value: f64,
    /// `N(E)`.
    pub numerator: f64,
    /// `D(E)`.
    pub denominator: f64,
    /// `T(E) >= 0`.
    pub valid: bool,
    /// The sign of `N` admits a root on the state's branch.
    pub physical: bool,
}

impl Residual {
    fn usable(&self) -> Option<f64> {
        (self.valid && self.physical).then_some(self.value)
    }
}

pub fn residual(params: &ModelParams, state: &StateIndex, energy: f64) -> Result<Residual> {
    check_energy(params, energy)?;
    let (alpha_sq, beta_sq) = couplings(params, energy)?;
    Ok(residual_from_couplings(
        epsilon(params, energy),
        alpha_sq,
        beta_sq,
        state,
    ))
}

fn residual_from_couplings(eps: f64, alpha_sq: f64, beta_sq: f64, state: &StateIndex) -> Residual {
    match numerator_denominator(alpha_sq, beta_sq, state.l, state.q()) {
        None => Residual {
            value: f64::NAN,
            numerator: f64::NAN,
            denominator: f64::NAN,
            valid: false,
            physical: false,
        },
        Some((n, d)) => {
            let sigma = state.branch.sigma();
            Residual {
                value: eps + sigma * n / (2.0 * d),
                numerator: n,
                denominator: d,
                valid: true,
                physical: sigma * n < 0.0,
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub energy: f64,
    /// `|f(E)|` at the root.
    pub residual: f64,
    pub q_used: u32,
    /// Sign of the energy, `-1` or `+1` (0 when absent).
    pub sign: i8,
    pub branch: Branch,
    pub exists: bool,
}

impl EnergyLevel {
    pub fn absent(q_used: u32, branch: Branch) -> Self {
        Self {
            energy: f64::NAN,
            residual: f64::NAN,
            q_used,
            sign: 0,
            branch,
            exists: false,
        }
    }
}

/// Every root found for one state, ascending in energy.
#[derive(Debug, Clone, PartialEq)]
pub struct Levels {
    pub state: StateIndex,
    pub roots: Vec<EnergyLevel>,
}

impl Levels {
    pub fn exists(&self) -> bool {
        !self.roots.is_empty()
    }

    /// Lowest root, or an absent level.
    pub fn lowest(&self) -> EnergyLevel {
        self.roots
            .first()
            .copied()
            .unwrap_or_else(|| EnergyLevel::absent(self.state.q(), self.state.branch))
    }

    /// Root closest to `energy`.
    pub fn nearest(&self, energy: f64) -> Option<EnergyLevel> {
        self.roots.iter().copied().min_by(|a, b| {
            (a.energy - energy)
                .abs()
                .partial_cmp(&(b.energy - energy).abs())
                .unwrap_or(core::cmp::Ordering::Equal)
        })
    }

    pub fn energies(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.energy).collect()
    }
}

/// Scans `(-M, M)` for roots of `f` (which returns `None` where undefined or
/// unphysical) and packages them as levels.
pub(crate) fn solve_with<F>(params: &ModelParams, state: &StateIndex, f: F) -> Result<Levels>
where
    F: Fn(f64) -> Option<f64>,
{
    params.validate()?;
    let margin = SCAN_MARGIN * params.mass;
    let lo = -params.mass + margin;
    let hi = params.mass - margin;
    let roots = roots::find_roots(&f, lo, hi, SCAN_POINTS)?;
    let levels = roots
        .into_iter()
        .map(|e| EnergyLevel {
            energy: e,
            residual: f(e).map_or(f64::NAN, f64::abs),
            q_used: state.q(),
            sign: if e < 0.0 { -1 } else { 1 },
            branch: state.branch,
            exists: true,
        })
        .collect();
    Ok(Levels {
        state: *state,
        roots: levels,
    })
}

/// All bound-state energies of `state`.
pub fn solve_level(params: &ModelParams, state: &StateIndex) -> Result<Levels> {
    let c = derive_coefficients(params)?;
    let mass = params.mass;
    let two_d2 = 2.0 * params.delta * params.delta;
    let f = |e: f64| {
        let u = e + mass;
        let eps = epsilon(params, e);
        residual_from_couplings(eps, c.v014 * u / two_d2, c.v023 * u / two_d2, state).usable()
    };
    solve_with(params, state, f)
}

/// Closed-form screened-Coulomb limit
/// `E = M [(n_r+l+1)^2 - V0^2] / [(n_r+l+1)^2 + V0^2]`.
pub fn coulomb_energy(v0: f64, n_r: u32, l: u32, mass: f64) -> f64 {
    let n = f64::from(n_r + l + 1);
    let n2 = n * n;
    let v2 = v0 * v0;
    mass * (n2 - v2) / (n2 + v2)
}

/// Reductions of the model obtained by switching terms off.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecialCase {
    /// `V0 = V0' = 0`.
    ManningRosen,
    /// `eta = 1`, `A = 0`.
    ClassYukawa,
    /// `eta = 1`, `V0 = V0' = 0`.
    Hulthen,
    /// `eta = 1`, `A = 0`, `V0' = 0`.
    Yukawa,
    /// `eta = 1`, `A = 0`, `V0 = 0`.
    InverseQuadraticYukawa,
    /// `l = 0`.
    SWave,
}

impl SpecialCase {
    pub const ALL: [SpecialCase; 6] = [
        SpecialCase::ManningRosen,
        SpecialCase::ClassYukawa,
        SpecialCase::Hulthen,
        SpecialCase::Yukawa,
        SpecialCase::InverseQuadraticYukawa,
        SpecialCase::SWave,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpecialCase::ManningRosen => "Manning-Rosen",
            SpecialCase::ClassYukawa => "class of Yukawa",
            SpecialCase::Hulthen => "Hulthen",
            SpecialCase::Yukawa => "Yukawa",
            SpecialCase::InverseQuadraticYukawa => "inversely quadratic Yukawa",
            SpecialCase::SWave => "s-wave",
        }
    }

    fn forced(self) -> (Option<f64>, Option<f64>, Option<f64>, Option<f64>) {
        // (eta, A, V0, V0')
        match self {
            SpecialCase::ManningRosen => (None, None, Some(0.0), Some(0.0)),
            SpecialCase::ClassYukawa => (Some(1.0), Some(0.0), None, None),
            SpecialCase::Hulthen => (Some(1.0), None, Some(0.0), Some(0.0)),
            SpecialCase::Yukawa => (Some(1.0), Some(0.0), None, Some(0.0)),
            SpecialCase::InverseQuadraticYukawa => (Some(1.0), Some(0.0), Some(0.0), None),
            SpecialCase::SWave => (None, None, None, None),
        }
    }

    /// Sets the forced parameters, leaving the free ones untouched.
    pub fn force(self, params: &ModelParams) -> ModelParams {
        let (eta, a, v0, v0p) = self.forced();
        ModelParams {
            eta: eta.unwrap_or(params.eta),
            a: a.unwrap_or(params.a),
            v0: v0.unwrap_or(params.v0),
            v0_prime: v0p.unwrap_or(params.v0_prime),
            ..*params
        }
    }

    /// Rejects parameters or states that contradict the forcing.
    pub fn check(self, params: &ModelParams, state: &StateIndex) -> Result<()> {
        let (eta, a, v0, v0p) = self.forced();
        let fields = [
            (eta, params.eta, "eta"),
            (a, params.a, "A"),
            (v0, params.v0, "V0"),
            (v0p, params.v0_prime, "V0'"),
        ];
        for (forced, given, field) in fields {
            if let Some(v) = forced {
                if given != v {
                    return Err(Error::ConflictingOverride {
                        case: self.name(),
                        field,
                    });
                }
            }
        }
        if self == SpecialCase::SWave && state.l != 0 {
            return Err(Error::ConflictingOverride {
                case: self.name(),
                field: "l",
            });
        }
        Ok(())
    }

    /// Residual of the case at `energy`; identical to [`residual`] with the
    /// forced parameters.
    pub fn residual(self, params: &ModelParams, state: &StateIndex, energy: f64) -> Result<Residual> {
        self.check(params, state)?;
        residual(params, state, energy)
    }

    /// Residual written in the case's own variables: `gamma^2 = A u / M`
    /// for the Manning-Rosen strength, `xi^2 = V0 u / delta` for the Yukawa
    /// strength and `zeta^2 = -2 V0' u` for the inverse-quadratic one.
    pub fn reduced_residual(
        self,
        params: &ModelParams,
        state: &StateIndex,
        energy: f64,
    ) -> Result<Residual> {
        self.check(params, state)?;
        check_energy(params, energy)?;
        let u = energy + params.mass;
        let v = SpecialCaseParams::at(params, energy);
        let mr_alpha = params.eta * (params.eta - 1.0) * u / params.mass;
        let (alpha_sq, beta_sq) = match self {
            SpecialCase::ManningRosen => (mr_alpha, v.gamma_sq),
            SpecialCase::Hulthen => (0.0, v.gamma_sq),
            SpecialCase::Yukawa => (0.0, v.xi_sq),
            SpecialCase::InverseQuadraticYukawa => (v.zeta_sq, 0.0),
            SpecialCase::ClassYukawa => (v.zeta_sq, v.xi_sq),
            SpecialCase::SWave => (mr_alpha + v.zeta_sq, v.gamma_sq + v.xi_sq),
        };
        Ok(residual_from_couplings(
            epsilon(params, energy),
            alpha_sq,
            beta_sq,
            state,
        ))
    }
}

/// Case-specific couplings at a trial energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialCaseParams {
    /// `A (E+M) / M`.
    pub gamma_sq: f64,
    /// `V0 (E+M) / delta`.
    pub xi_sq: f64,
    /// `-2 V0' (E+M)`.
    pub zeta_sq: f64,
}

impl SpecialCaseParams {
    pub fn at(params: &ModelParams, energy: f64) -> Self {
        let u = energy + params.mass;
        Self {
            gamma_sq: params.a * u / params.mass,
            xi_sq: params.v0 * u / params.delta,
            zeta_sq: -2.0 * params.v0_prime * u,
        }
    }
}

pub fn solve_special_case(
    case: SpecialCase,
    params: &ModelParams,
    state: &StateIndex,
) -> Result<Levels> {
    case.check(params, state)?;
    solve_level(params, state)
}
