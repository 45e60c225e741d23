use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Why a boundary solver found nothing to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoKey {
    AtAnyDistance,
    EvenWithPerfectDetectors,
}

impl std::fmt::Display for NoKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NoKey::AtAnyDistance => f.write_str("no key at any distance"),
            NoKey::EvenWithPerfectDetectors => f.write_str("no key even with perfect detectors"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Floating point results that contradict the model (negative
    /// discriminants, non-positive variances and the like).
    #[error("numerical consistency error: {0}")]
    Numerical(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{0}")]
    NoKey(NoKey),

    /// The key-rate profile changed direction inside the solver bracket.
    #[error("non-monotone key-rate profile along {axis} near {at}")]
    NonMonotone { axis: &'static str, at: f64 },

    /// The key rate never reached zero inside the solver bracket.
    #[error("key rate stays positive across the whole {axis} bracket [{lo}, {hi}]")]
    Unbracketed { axis: &'static str, lo: f64, hi: f64 },

    #[error("Fock truncation inadequate: tail weight {tail:e} at cutoff {cutoff}")]
    Truncation { cutoff: usize, tail: f64 },

    #[error("degenerate projection: probability {0:e} is below 1e-14")]
    DegenerateProjection(f64),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Config(_) => 2,
            Error::Numerical(_)
            | Error::NonMonotone { .. }
            | Error::Unbracketed { .. }
            | Error::Truncation { .. }
            | Error::DegenerateProjection(_) => 3,
            Error::NoKey(_) => 4,
            Error::Io(_) => 1,
        }
    }
}
