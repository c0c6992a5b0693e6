use thiserror::Error;

/// Errors surfaced by field construction, solvers, and quadrature.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("point {point:?} lies outside the box [-{half_width}, {half_width})^{dim}")]
    OutOfDomain {
        point: Vec<f64>,
        half_width: f64,
        dim: usize,
    },

    #[error("unsupported derivative order {0} (expected 1 or 2)")]
    UnsupportedOrder(usize),

    #[error("support margin violated: {0}")]
    MarginViolation(String),

    #[error("profile must vanish at the axis, got f(0) = {0:e}")]
    SingularAxis(f64),

    #[error("grid incompatible: {0}")]
    GridCompatibility(String),

    #[error("potential arity mismatch: {0}")]
    PotentialArity(String),

    #[error("velocity not compactly supported inside radius L/2: {0}")]
    NotCompactlySupported(String),

    #[error("axis condition violated: {0}")]
    AxisCondition(String),

    #[error("solver failed: relative residual {residual:e} (history: {history:?})")]
    SolverFailure { residual: f64, history: Vec<f64> },

    #[error("ramp parameters invalid: {0}")]
    InvalidRampParameters(String),

    #[error("time step {dt:e} exceeds the CFL limit {limit:e}")]
    CflViolation { dt: f64, limit: f64 },

    #[error("support escaped the tracking window: {0}")]
    WindowOverflow(String),

    #[error("field file format error in '{field}': {message}")]
    Format { field: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
