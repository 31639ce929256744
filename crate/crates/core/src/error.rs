use thiserror::Error;

/// Failures reported by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// The interpolant gap `F0 - f0(x)` is not positive at an interior point.
    #[error("interpolant gap is non-positive ({gap:e}) at x = {x}")]
    NonPositiveGap { x: f64, gap: f64 },

    /// A search bracket is empty, reversed or not finite.
    #[error("invalid bracket [{lo}, {hi}]")]
    InvalidBracket { lo: f64, hi: f64 },

    /// An iterative or adaptive scheme stopped before reaching its tolerance.
    #[error("{what} did not converge (achieved error estimate {estimate:e})")]
    NonConvergence { what: &'static str, estimate: f64 },

    /// A root search could not find a sign change.
    #[error("no sign change for {what} on [{lo}, {hi}] (values {f_lo:e}, {f_hi:e})")]
    NoBracket {
        what: &'static str,
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    /// True for failures of an iterative numerical scheme, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonConvergence { .. } | Error::NoBracket { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
