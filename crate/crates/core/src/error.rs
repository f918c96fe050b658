use thiserror::Error;

/// Errors produced by the numerical and combinatorial routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The request exceeds a documented size cap.
    #[error("capacity exceeded: {what} supports n <= {max}, got {got}")]
    Capacity {
        what: &'static str,
        max: usize,
        got: usize,
    },

    /// Malformed input data (NaN weights, bad tables, mismatched lengths).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A graph argument lacks a required structural property.
    #[error("structural error: {0}")]
    Structure(String),

    /// The potential lacks a constant the operation needs.
    #[error("unsupported potential: missing {0}")]
    MissingConstant(&'static str),

    /// The radial integrand does not decay fast enough to be integrable.
    #[error("potential is not tempered: {0}")]
    NotTempered(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_capacity(what: &'static str, n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(Error::Capacity { what, max, got: n })
    } else {
        Ok(())
    }
}
