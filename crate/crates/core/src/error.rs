use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A direction was requested from a zero-length vector.
    #[error("degenerate direction: {0}")]
    DegenerateDirection(&'static str),

    /// Upper and lower feasibility transition bounds crossed.
    #[error(
        "feasibility transition bounds inverted (beta_plus {beta_plus} < beta_minus {beta_minus})"
    )]
    InvertedTransition { beta_plus: f64, beta_minus: f64 },

    /// A guidance stage produced a non-finite intermediate.
    #[error("guidance fault in stage `{stage}`")]
    GuidanceFault { stage: &'static str },

    #[error("simulation fault at step {step}: {reason}")]
    SimulationFault { step: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
