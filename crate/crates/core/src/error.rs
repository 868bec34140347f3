use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("pole of the gamma function at {0}")]
    Pole(f64),
    #[error("divergence: {0}")]
    Divergence(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("no bound state with n = {n} (bound states require n < {limit})")]
    NoBoundState { n: usize, limit: f64 },
    #[error("trajectory left the admissible domain at t = {t} (last valid x = {x}, xdot = {xdot})")]
    DomainExit { t: f64, x: f64, xdot: f64 },
    #[error("level n = {n} is unreachable: {reason}")]
    LevelUnreachable { n: usize, reason: String },
    #[error("no real solution: {0}")]
    NoRealSolution(String),
    #[error("state is not normalizable: {0}")]
    Unbounded(String),
    #[error("quasi-exact limit: {0}")]
    QuasiExactLimit(String),
    #[error("convergence failure: {0}")]
    Convergence(String),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Argument(_) => 1,
            Error::LevelUnreachable { .. } | Error::QuasiExactLimit(_) | Error::Convergence(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {v}")))
    }
}
