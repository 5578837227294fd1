use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = {0}")]
    Pole(String),
    #[error("invalid specialization: q = 0")]
    ZeroSpecialization,
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),
    #[error("R-matrix validation failed: {0}")]
    RMatrix(String),
    #[error("inconsistent presentation: {0}")]
    Presentation(String),
    #[error("invalid functional: {0}")]
    InvalidFunctional(String),
    #[error("grade {grade} exceeds the wedge table cap {cap}")]
    GradeCap { grade: usize, cap: usize },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("type error: {0}")]
    Type(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
