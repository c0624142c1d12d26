use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("zero input")]
    ZeroInput,
    #[error("dimension is infinite")]
    InfiniteDimension,
    #[error("constant term is zero")]
    ConstantTermZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("budget exceeded: need {needed}, budget {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("not representable: {0}")]
    NotRepresentable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
