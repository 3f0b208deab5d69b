use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Model parameters violate their invariants.
    InvalidModel(&'static str),
    /// A numeric argument lies outside the domain of the operation.
    Domain { what: &'static str, value: f64 },
    /// `1/4 + alpha^2 + l(l+1)` is negative at the requested energy.
    NegativeDiscriminant { energy: f64, value: f64 },
    /// A hypergeometric lower parameter sits on a pole.
    PoleParameter(f64),
    /// An iterative procedure ran out of refinement budget.
    NoConvergence { what: &'static str, reached: f64 },
    /// A wave function was requested for a level that does not exist.
    AbsentLevel,
    /// Special-case parameters contradict the case's forced values.
    ConflictingOverride { case: &'static str, field: &'static str },
    /// Inverse iteration failed to settle on an eigenvector.
    Stagnation,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidModel(msg) => write!(f, "invalid model: {msg}"),
            Error::Domain { what, value } => write!(f, "{what} out of domain: {value}"),
            Error::NegativeDiscriminant { energy, value } => write!(
                f,
                "negative discriminant 1/4 + alpha^2 + l(l+1) = {value} at E = {energy}"
            ),
            Error::PoleParameter(c) => write!(f, "lower parameter {c} is a nonpositive integer"),
            Error::NoConvergence { what, reached } => {
                write!(f, "{what} did not converge (reached {reached:e})")
            }
            Error::AbsentLevel => f.write_str("energy level does not exist"),
            Error::ConflictingOverride { case, field } => {
                write!(f, "{case} forces {field}, but a conflicting value was supplied")
            }
            Error::Stagnation => f.write_str("inverse iteration stagnated"),
        }
    }
}

impl core::error::Error for Error {}
