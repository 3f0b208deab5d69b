//! Special functions needed by the eigenfunctions and their normalization.

mod gamma;
mod hypergeometric;
mod quadrature;

pub use gamma::{ln_beta, ln_factorial, ln_gamma};
pub use hypergeometric::{hyp2f1_terminating, jacobi_p, jacobi_p_via_hyp2f1};
pub use quadrature::{integrate, Quadrature, QuadratureSpec};
