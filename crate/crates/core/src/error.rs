use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("matrix is not of X form (largest off-X entry {max_off_x:e})")]
    NonXForm { max_off_x: f64 },

    #[error("not a valid density matrix: {0}")]
    NotAState(String),

    #[error("spatial factor {0} is too close to +-1 for the closed-form solution")]
    LambdaSingular(f64),

    #[error("rate matrix has a (near-)degenerate spectrum")]
    DegenerateSpectrum,

    #[error("ODE step size underflow at tau = {tau} (h = {step:e})")]
    StepUnderflow { tau: f64, step: f64 },

    #[error("closed-form assumption violated: {0}")]
    AssumptionViolated(&'static str),

    #[error("negative radicand {0:e}: state is unphysical")]
    UnphysicalRadicand(f64),

    #[error(
        "dynamics are frozen (gray factor 0) and the state is entangled: lifetime is unbounded"
    )]
    FrozenDynamics,

    #[error("maximum over time did not converge ({0})")]
    NonConvergedMax(String),

    #[error("no entanglement generation above cutoff {cutoff:e}")]
    NoGeneration { cutoff: f64 },

    #[error("sweep cell (axis1 = {axis1}, axis2 = {axis2}) failed: {source}")]
    CellFailed {
        axis1: f64,
        axis2: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

/// Rejects NaN and infinities.
pub(crate) fn finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite",
        })
    }
}

pub(crate) fn non_negative(name: &'static str, value: f64) -> Result<f64> {
    finite(name, value)?;
    if value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be >= 0",
        })
    }
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    finite(name, value)?;
    if value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be > 0",
        })
    }
}
