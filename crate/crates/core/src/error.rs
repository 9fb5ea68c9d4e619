use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid sequence spec `{spec}`: {reason}")]
    ParseSequence { spec: String, reason: String },

    #[error("index {index} is past the end of an explicit sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("sequence value F_{index} is zero; F_n must be positive for n >= 1")]
    ZeroValue { index: usize },

    #[error("index {n} exceeds the table bound {max}")]
    BoundExceeded { n: usize, max: usize },

    #[error("k = {k} exceeds n = {n}")]
    KExceedsN { n: usize, k: usize },

    #[error("F-nomial ({n} {k}) is not an integer: {numer}/{denom}")]
    NonIntegral {
        n: usize,
        k: usize,
        numer: BigUint,
        denom: BigUint,
    },

    #[error("invalid vertex <{index},{level}>")]
    InvalidVertex { index: usize, level: usize },

    #[error("level range {from}..={to} is invalid for max level {max}")]
    LevelRange { from: usize, to: usize, max: usize },

    #[error("budget of {budget} {what} exceeded: {predicted} required")]
    BudgetExceeded {
        what: &'static str,
        predicted: BigUint,
        budget: u64,
    },

    #[error("block {index} is not a candidate of this instance ({count} candidates)")]
    ForeignBlock { index: usize, count: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("relative tolerance {rel_tol:e} is not achievable within {terms} series terms")]
    ToleranceUnachievable { rel_tol: f64, terms: usize },
}
