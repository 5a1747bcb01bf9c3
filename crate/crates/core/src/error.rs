use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("root of unity exp(2 pi i * {turns}) is not in Q(zeta_{conductor})")]
    FieldTooSmall { turns: String, conductor: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("grading mismatch: {0}")]
    Grading(String),
    #[error("invalid label: {0}")]
    Label(String),
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("type error at {path}: {msg}")]
    Type { path: String, msg: String },
    #[error("malformed diagram: {0}")]
    Diagram(String),
    #[error("inadmissible diagram: component {component}: {msg}")]
    Inadmissible { component: usize, msg: String },
    #[error("invalid Kirby move site: {0}")]
    KirbySite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
