use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AtlasError {
    /// |a| = 1 collapses the family to z ↦ -a z^3 and the free critical
    /// points disappear; a = 0 sends them to 0 and ∞.
    #[error("degenerate parameter a = {0}: no free critical points")]
    DegenerateParameter(Complex64),

    #[error("derivative at pole z = {0}")]
    DerivativeAtPole(Complex64),

    /// Circle lifts only exist once B_a restricted to S^1 is a degree-2
    /// covering, i.e. for |a| >= 2.
    #[error("lift undefined below modulus 2 (|a| = {0})")]
    LiftUndefined(f64),

    #[error("lift grid too small ({0} < {1} samples)")]
    LiftGridTooSmall(usize, usize),

    #[error("points do not close up into a cycle under B_a (gap {gap:.3e} > {tol:.3e})")]
    CycleNotClosed { gap: f64, tol: f64 },

    #[error("parameter a = {0} is outside a hyperbolic component (no attracting cycle found)")]
    OutsideHyperbolicComponent(Complex64),

    #[error("multiplier solve failed after {steps} steps: {reason} (best residual {residual:.3e})")]
    SolveFailed {
        steps: usize,
        reason: String,
        residual: f64,
    },

    #[error("no attracting cycle of period {period} for the {family} family near the seed")]
    NoMatchingCycle { family: String, period: usize },

    #[error("attracting cycle period changed from {expected} to {found} during continuation")]
    PeriodChanged { expected: usize, found: usize },

    #[error("invalid plane window: {0}")]
    InvalidWindow(String),

    #[error("malformed grid CSV at line {line}: {message}")]
    MalformedCsv { line: usize, message: String },

    #[error("config error: {0}")]
    Config(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl AtlasError {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        AtlasError::Io {
            path: path.into(),
            source,
        }
    }

    /// CLI exit code: 1 when the request itself is malformed or breaks a
    /// stated flag rule, 2 when the requested object does not exist
    /// mathematically or a computation failed.
    pub fn exit_code(&self) -> i32 {
        match self {
            AtlasError::Usage(_)
            | AtlasError::Config(_)
            | AtlasError::InvalidWindow(_)
            | AtlasError::MalformedCsv { .. }
            | AtlasError::LiftGridTooSmall(..) => 1,
            _ => 2,
        }
    }
}
