use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("degenerate metric at point (pivot {pivot:e})")]
    DegenerateMetric { pivot: f64 },

    #[error("degenerate section: Gram determinant {gram:e} is below 1e-10")]
    DegenerateSection { gram: f64 },

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("model {model} has no contact bundle")]
    NoContactBundle { model: String },

    #[error("unknown suite id: {0}")]
    UnknownSuite(String),

    #[error("unknown preset: {0}")]
    UnknownPreset(String),

    #[error("unknown model: {0}")]
    UnknownModel(String),

    #[error("B-tensor coefficients rejected: {0}")]
    Coefficients(String),

    #[error("model not Sasakian under given scales: best residual {best:e}\n{table}")]
    Calibration { best: f64, table: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
