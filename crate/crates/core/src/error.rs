use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("degree {0} is too small (need d >= 4)")]
    DegreeTooSmall(usize),

    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("degrees {a} + {b} do not add up to the socle degree {socle}")]
    SocleDegreeMismatch { a: usize, b: usize, socle: usize },

    #[error("exterior order out of range: {0}")]
    OrderOutOfRange(String),

    #[error("the binary form is not squarefree")]
    NotSmooth,

    #[error("u_{i} * mu_{j} is not a multiple of eta")]
    LambdaNotScalar { i: usize, j: usize },

    #[error("classes belong to different rings")]
    RingMismatch,

    #[error("malformed polynomial input: {0}")]
    MalformedInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
