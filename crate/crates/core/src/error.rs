use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("pairing has a non-negligible imaginary part ({imag:e})")]
    NonRealPairing { imag: f64 },

    #[error("map does not induce a Hermitian matrix (max deviation {deviation:e})")]
    NonHermitianMap { deviation: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("s*t = {product} is off the variety st = 8")]
    OffVariety { product: f64 },

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("invalid cut: {0}")]
    InvalidCut(String),

    #[error("invalid tensor shape: {0}")]
    InvalidShape(String),

    #[error("malformed document: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
