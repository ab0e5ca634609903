use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the evaluators.
///
/// Variants split into two families: domain errors (the caller asked for a
/// value outside an operation's precondition) and numeric errors (the
/// requested accuracy could not be reached). See [`Error::is_numeric`].
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("pole of the gamma function at {0}")]
    Pole(Complex64),

    #[error("series diverges: {0}")]
    Divergence(String),

    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("divergent iterated integral word: {0}")]
    DivergentWord(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} did not converge within {iterations} iterations")]
    Convergence { what: &'static str, iterations: usize },

    #[error("quadrature did not reach {target:e} (last inter-level difference {achieved:e})")]
    NonConvergence { achieved: f64, target: f64 },

    #[error("tail bound {bound:e} exceeds target {target:e} at cap N = {cap}")]
    TailTooLarge { bound: f64, target: f64, cap: usize },

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),
}

impl Error {
    /// True for failures of the numerical machinery, false for precondition
    /// violations.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Convergence { .. } | Error::NonConvergence { .. } | Error::TailTooLarge { .. } | Error::NonFinite(_)
        )
    }

    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Pole(_) => "pole",
            Error::Divergence(_) => "divergence",
            Error::InvalidComposition(_) => "invalid_composition",
            Error::DivergentWord(_) => "divergent_word",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Convergence { .. } => "convergence",
            Error::NonConvergence { .. } => "non_convergence",
            Error::TailTooLarge { .. } => "tail_too_large",
            Error::NonFinite(_) => "non_finite",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
