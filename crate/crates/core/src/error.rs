use thiserror::Error;

/// Errors raised by the library. Every variant describes rejected input;
/// there is no IO in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown gamma representation `{0}` (expected dirac, majorana-paper or majorana-alt)")]
    UnknownRepresentation(alloc::string::String),
    #[error("representation `{0}` is not purely imaginary; real-field evolution needs a Majorana representation")]
    NotMajoranaRepresentation(&'static str),
    #[error("bispinor violates the Majorana condition ψ_c = ψ (residual {residual:e})")]
    NotMajorana { residual: f64 },
    #[error(
        "momentum must be nonzero (helicity and light-cone quantities are undefined at p = 0)"
    )]
    DegenerateMomentum,
    #[error("bispinor is not normalized (vᵀv = {norm_sq})")]
    NotNormalized { norm_sq: f64 },
    #[error("field is not normalized (⟨ψ|ψ⟩ = {norm_sq})")]
    FieldNotNormalized { norm_sq: f64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(&'static str),
    #[error("fields live on different grids")]
    GridMismatch,
    #[error("time step {dt} violates dt·E_max < {bound} (E_max = {e_max}); use dt ≤ {suggested}")]
    Unstable {
        dt: f64,
        e_max: f64,
        bound: f64,
        suggested: f64,
    },
    #[error("trajectory needs at least {needed} equally spaced samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("trajectory samples are not equally spaced in time")]
    UnevenSampling,
    #[error("four-momentum is off the mass shell (p² − m² = {residual:e})")]
    OffShell { residual: f64 },
    #[error("mass must be positive for the massive representation (got {0})")]
    NonPositiveMass(f64),
    #[error("matrix is not a proper orthochronous Lorentz transform (residual {residual:e})")]
    NotLorentz { residual: f64 },
    #[error("matrix is not a rotation (residual {residual:e})")]
    NotRotation { residual: f64 },
    #[error("(α, β) is not a unit SU(2) pair (|α|² + |β|² = {norm_sq})")]
    NotUnitary { norm_sq: f64 },
    #[error("axis index {0} out of range 1..=3")]
    BadAxis(usize),
    #[error("mismatched lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("internal consistency failure: {0}")]
    Internal(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
