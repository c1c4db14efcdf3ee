use thiserror::Error;

/// Errors raised by the closed forms, the amplitude oracle and the geometry.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QdtError {
    /// A probability (or weight) outside `[0, 1]`.
    #[error("{name} = {value} is outside [0, 1]")]
    OutOfRange { name: &'static str, value: f64 },

    /// A non-finite input where a real number is required.
    #[error("{name} is not finite ({value})")]
    NotFinite { name: &'static str, value: f64 },

    /// A count argument outside its admissible range.
    #[error("{name} = {value} is not a valid count ({reason})")]
    InvalidCount {
        name: &'static str,
        value: usize,
        reason: &'static str,
    },

    /// A denominator at or below the singularity threshold.
    #[error("singular {what}: {value:e} is within tolerance of zero")]
    Singular { what: &'static str, value: f64 },

    /// Both probabilities sit on the boundary so the extremal weights are undefined.
    #[error("extremal weights undefined for p0 = {p0}, p1 = {p1}: denominator vanishes")]
    DegenerateWeights { p0: f64, p1: f64 },

    /// Both interference amplitudes vanish; level sets are not lines.
    #[error("experiment `{label}` has no interference amplitude; its level sets are not lines")]
    DegenerateExperiment { label: String },

    /// A target probability was requested but neither given nor observed.
    #[error("experiment `{label}` has no observed mixed-condition probability")]
    MissingObserved { label: String },

    /// Projection annihilated the state.
    #[error("projection has norm {norm:e}; the event is orthogonal to the state")]
    ZeroNorm { norm: f64 },

    #[error("operation requires {expected} conditions, found {found}")]
    UnsupportedDimension { expected: usize, found: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{what} is not normalized (deviation {deviation:e})")]
    NotNormalized { what: String, deviation: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    /// The 2x2 system of two trajectories has no unique solution.
    #[error("trajectories are parallel (determinant {determinant:e})")]
    ParallelLines { determinant: f64 },

    #[error("index {index} out of bounds for {len} experiments")]
    IndexOutOfBounds { index: usize, len: usize },
}

impl QdtError {
    /// True for failures that come from the numerics (singular or degenerate
    /// configurations) rather than from invalid input values.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            QdtError::Singular { .. }
                | QdtError::DegenerateWeights { .. }
                | QdtError::DegenerateExperiment { .. }
                | QdtError::ZeroNorm { .. }
                | QdtError::ParallelLines { .. }
        )
    }
}

pub type Result<T, E = QdtError> = std::result::Result<T, E>;
