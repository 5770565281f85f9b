use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("minimal polynomial {0} is reducible over Q")]
    ReducibleMinpoly(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("value {0} lies outside the coefficient field")]
    OutsideField(String),
    #[error("variable mismatch: expected {expected}, found {found}")]
    VarMismatch { expected: String, found: String },
    #[error("polynomial does not vanish at the given point")]
    NotVanishing,
    #[error("constant function where a nonconstant one is required")]
    ConstantFunction,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
