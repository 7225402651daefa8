use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bad dimension: {0}")]
    BadDimension(String),

    #[error("matrix is not symmetric (relative asymmetry {asymmetry:.3e} exceeds {tol:.1e})")]
    NotSymmetric { asymmetry: f64, tol: f64 },

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite entry in input")]
    NonFinite,

    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(String),

    #[error("lattice dimension {dim} exceeds the enumeration cap {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },

    #[error("search box {given} is smaller than the certified radius {required}")]
    BoxTooSmall { required: i64, given: i64 },

    #[error("genus {g} is below the minimum {min}")]
    GenusTooSmall { g: u32, min: u32 },

    #[error("gonality {0} is invalid (need d >= 2)")]
    BadGonality(u32),

    #[error("divisor classes live on C x C for different genera ({0} vs {1})")]
    GenusMismatch(u32, u32),

    #[error("multiplicity must be at least 1")]
    BadMultiplicity,

    #[error("degree must be positive")]
    BadDegree,

    #[error("linear equation has vanishing leading coefficient")]
    DegenerateLinear,

    #[error("point must be nonzero")]
    ZeroInput,

    #[error("finite-difference step {step:.3e} is too small relative to |z| = {norm:.3e}")]
    StepTooSmall { step: f64, norm: f64 },

    #[error("invalid blow-up profile: {0}")]
    InvalidProfile(String),

    #[error("consistency violation: {0}")]
    ConsistencyViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
