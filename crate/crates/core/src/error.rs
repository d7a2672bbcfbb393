use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument {value} outside domain {domain}")]
    Domain {
        function: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("{function}: target error {target:e} not reached within {terms} terms")]
    Convergence {
        function: &'static str,
        target: f64,
        terms: usize,
    },

    #[error("{function}: missing required parameter `{parameter}`")]
    MissingParameter {
        function: &'static str,
        parameter: &'static str,
    },

    #[error("index {index} exceeds table size {max}")]
    Index { index: usize, max: usize },

    #[error("no sign change on [{lo}, {hi}]: f(lo)={f_lo:e}, f(hi)={f_hi:e}")]
    InvalidBracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("{name}={value} outside admissible range [{lo}, {hi}]")]
    Parameter {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(function: &'static str, value: f64, domain: &'static str) -> Error {
    Error::Domain {
        function,
        value,
        domain,
    }
}
