use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("direction must be a unit vector, got |n| = {norm}")]
    NonUnitDirection { norm: f64 },

    #[error("the zero vector has no direction")]
    ZeroVector,

    #[error("rapidity {0} is not finite or exceeds the cap |η| <= 50")]
    RapidityOutOfRange(f64),

    #[error("mass must be positive and finite, got {0}")]
    InvalidMass(f64),

    #[error("energy must be positive, got p_t = {0}")]
    NonPositiveEnergy(f64),

    #[error("momentum is off shell: p·p = {norm2}, expected {expected}")]
    OffShell { norm2: f64, expected: f64 },

    #[error("momentum has no spatial part")]
    NoSpatialMomentum,

    #[error("not a proper orthochronous Lorentz transformation (metric residual {residual:e}, det {det}, Λ^t_t {time_time})")]
    NotProperLorentz {
        residual: f64,
        det: f64,
        time_time: f64,
    },

    #[error("not a rotation fixing the rest momentum (residual {residual:e})")]
    NotRotation { residual: f64 },

    #[error("not a member of the little group of k (residual {residual:e})")]
    NotLittleGroup { residual: f64 },

    #[error("nonzero translations are not supported")]
    UnsupportedTranslation,

    #[error("state is not normalized: Σ|c|² = {0}")]
    Unnormalized(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
