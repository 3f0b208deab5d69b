//! Bound-state spectrum of the spin-0 Klein-Gordon equation with equal scalar
//! and vector Manning-Rosen plus class-of-Yukawa potentials.
//!
//! The crate is `no_std` (it needs `alloc` for grids and eigenvectors) and is
//! organised bottom-up:
//!
//! - [`potential`]: model parameters, the exact and exponentially approximated
//!   potentials, and the effective potential of the radial equation.
//! - [`specfun`]: log-gamma, terminating Gauss hypergeometric series, Jacobi
//!   polynomials and adaptive quadrature.
//! - [`roots`]: scan-and-bisect root bracketing shared by the solvers.
//! - [`spectrum`]: the energy quantization condition and its special cases.
//! - [`susy`]: superpotential, partner potentials and the shape-invariance
//!   energy chain.
//! - [`wavefunction`]: normalized radial eigenfunctions and node counting.
//! - [`oracle`]: finite-difference solver of the radial equation used as
//!   ground truth for the analytic spectrum.
#![cfg_attr(not(test), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod error;
mod math;

pub mod oracle;
pub mod potential;
pub mod roots;
pub mod specfun;
pub mod spectrum;
pub mod susy;
pub mod wavefunction;

pub use error::{Error, Result};
pub use potential::{CoefficientSet, ModelParams};
pub use spectrum::{Branch, Convention, EnergyLevel, Levels, StateIndex};
