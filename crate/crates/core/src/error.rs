use thiserror::Error;

/// Errors raised by the numeric kernel, the model wrappers and the engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: ‖M − M†‖_F = {residual:e} exceeds {tolerance:e}")]
    NotHermitian { residual: f64, tolerance: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("matrix is not unitary: ‖U†U − I‖_F = {residual:e} exceeds {tolerance:e}")]
    NotUnitary { residual: f64, tolerance: f64 },

    #[error("state norm {norm} is too far from 1 to renormalize")]
    NotNormalized { norm: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid dimension {0}: must be at least 1")]
    InvalidDimension(usize),

    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),

    #[error("no eigenvalue label matches {label}; available labels: {available:?}")]
    UnknownLabel { label: f64, available: Vec<f64> },

    #[error("post-selection probability {probability:e} is below the cutoff {cutoff:e}; weak value undefined")]
    PostselectionTooRare { probability: f64, cutoff: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
