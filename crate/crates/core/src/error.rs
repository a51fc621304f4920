use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OrbitError {
    /// Illegal input values: bad (series, rank), quasiroots outside the orbit, ...
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("degenerate orbit: {0}")]
    DegenerateOrbit(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("bivector is not invariant: {0}")]
    NotInvariant(String),
    #[error("degenerate linear form: {0}")]
    DegenerateForm(String),
    #[error("inadmissible seed: zero denominator at pair ({left}, {right})")]
    InadmissibleSeed { left: String, right: String },
    #[error("parametrization extraction failed: {0}")]
    ExtractionFailed(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("usage: {0}")]
    Usage(String),
}

impl OrbitError {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            OrbitError::Parameter(_) | OrbitError::DegenerateOrbit(_) | OrbitError::Usage(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, OrbitError>;
