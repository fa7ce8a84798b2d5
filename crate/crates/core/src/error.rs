use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero in Q(ζ24)")]
    DivisionByZero,
    #[error("series is not invertible: {0}")]
    NotInvertible(String),
    #[error("exponent off the 1/24 grid: {0}")]
    Grid(String),
    #[error("coefficient at exponent {exponent}/24 requested beyond precision cap {cap}/24")]
    OutOfPrecision { exponent: i64, cap: i64 },
    #[error("pole in Lerch sum at n = {n}")]
    Pole { n: i64 },
    #[error("theta denominator vanishes identically to the available precision")]
    ThetaVanishes,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown identity `{id}`; valid ids: {valid}")]
    UnknownId { id: String, valid: String },
    #[error("unknown numeric check `{name}`; valid checks: {valid}")]
    UnknownCheck { name: String, valid: String },
    #[error("numerical evaluation did not converge: {0}")]
    NonConvergence(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
