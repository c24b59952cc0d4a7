use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every numerical layer of the engine.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of a function (e.g. `mylog(0)`).
    #[error("domain error: {0}")]
    Domain(String),

    /// Physical configuration violates a structural constraint.
    #[error("configuration error: {0}")]
    Config(String),

    /// A rational expression was evaluated at (or numerically on top of) a pole.
    #[error("pole evaluation: {0}")]
    Pole(String),

    /// Cauchy probe point too close to the integration contour.
    #[error("probe point {alpha} lies within {distance:.3e} of the contour (minimum {minimum:.3e})")]
    Proximity {
        alpha: Complex64,
        distance: f64,
        minimum: f64,
    },

    /// Adaptive quadrature ran out of node budget before meeting its tolerance.
    #[error("quadrature did not converge: best value {best}, error estimate {estimate:.3e} after {evaluations} evaluations")]
    Accuracy {
        best: Complex64,
        estimate: f64,
        evaluations: usize,
    },

    /// The logarithm of a factorised function jumps by about 2π along the contour.
    #[error("branch crossing: mylog jumps by {jump:.3} between contour samples near {near}")]
    BranchCrossing { jump: f64, near: Complex64 },

    /// Caller misuse: mismatched dimensions, misaligned grids, degenerate inputs.
    #[error("usage error: {0}")]
    Usage(String),

    /// A decay-rate probe could not evaluate along its ray.
    #[error("probe error: {0}")]
    Probe(String),

    #[error("i/o error at {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// True for failures caused by numerical accuracy rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Accuracy { .. }
                | Error::BranchCrossing { .. }
                | Error::Proximity { .. }
                | Error::Probe(_)
        )
    }
}
