use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("enumeration guard exceeded: n = {n} > {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed linear program: {0}")]
    MalformedLp(String),
    #[error("linear program is {0}")]
    LpStatus(&'static str),
    #[error("measure is not {k}-wise independent: {detail}")]
    NotIndependent { k: usize, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
