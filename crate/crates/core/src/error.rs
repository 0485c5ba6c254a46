use thiserror::Error;

use crate::linalg::LinalgError;

/// Default cap on the number of objects an exhaustive enumeration may visit.
pub const DEFAULT_GUARD: u64 = 1_000_000;

/// Environment variable that overrides [`DEFAULT_GUARD`].
pub const GUARD_ENV: &str = "CSLAB_GUARD";

/// Upper bound on exhaustive enumerations (vectors, Hom elements, cocycle
/// classes). Exceeding it is an error rather than a long hang.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guard(pub u64);

impl Default for Guard {
    fn default() -> Self {
        Guard(DEFAULT_GUARD)
    }
}

impl Guard {
    /// Reads `CSLAB_GUARD`, falling back to the default when unset or unparsable.
    pub fn from_env() -> Self {
        std::env::var(GUARD_ENV).ok().and_then(|s| s.trim().parse().ok()).map(Guard).unwrap_or_default()
    }

    /// Fails when `p^exponent` exceeds the guard.
    pub fn check(self, what: &'static str, p: u32, exponent: usize) -> Result<u64> {
        let needed = crate::linalg::field_power(p, exponent);
        if needed > self.0 {
            Err(Error::GuardExceeded { what, needed, limit: self.0 })
        } else {
            Ok(needed)
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("modules or algebras over different algebras cannot be combined")]
    AlgebraMismatch,
    #[error("subspace is not closed under the algebra action")]
    NotActionClosed,
    #[error("{what}: enumeration of {needed} elements exceeds guard {limit}")]
    GuardExceeded { what: &'static str, needed: u64, limit: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("theorem violation (internal bug): {0}")]
    TheoremViolation(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: parse error at line {line}, column {column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
}

impl Error {
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
