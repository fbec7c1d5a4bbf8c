use thiserror::Error;

use crate::arf::ArfWitness;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty generator list")]
    EmptyGenerators,

    #[error("generator {0} is not positive")]
    NonPositiveGenerator(i64),

    #[error("generators have gcd {gcd}; the semigroup would not be cofinite")]
    NonCoprime { gcd: i64 },

    #[error("membership window {needed} exceeds the configured bound {limit}")]
    BoundExceeded { needed: i64, limit: i64 },

    #[error("{value} ∉ {semigroup}")]
    NotInSemigroup { value: i64, semigroup: String },

    #[error("not a numerical semigroup: {0}")]
    InvalidSemigroup(String),

    #[error("value set is not a module over {semigroup}: {detail}")]
    NotAModule { semigroup: String, detail: String },

    #[error("ideals live over different semigroups ({left} vs {right})")]
    AmbientMismatch { left: String, right: String },

    #[error("operation needs an integral ideal, got minimum value {min}")]
    FractionalInput { min: i64 },

    #[error("{semigroup} is not Arf: {witness}")]
    NotArf { semigroup: String, witness: ArfWitness },

    #[error("invalid multiplicity sequence: partial sum {partial_sum} breaks addition closure")]
    InvalidSequence { partial_sum: i64 },

    #[error("multiplicity sequence entry {0} is not positive")]
    NonPositiveEntry(i64),

    #[error("the unit ideal has no proper principality data")]
    UnitIdeal,

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
