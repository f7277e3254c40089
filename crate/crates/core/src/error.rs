use thiserror::Error;

use crate::data::{FixedPointDatum, ValidationReport};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("point {point}: weight #{position} is {value}, weights must be positive")]
    NonPositiveWeight {
        point: usize,
        position: usize,
        value: i64,
    },
    #[error("point {point}: sign {value} is not +1 or -1")]
    BadSign { point: usize, value: i64 },
    #[error("point {point}: has {found} weights, expected {expected}")]
    MixedArity {
        point: usize,
        expected: usize,
        found: usize,
    },
    #[error("point {point}: no weights given")]
    EmptyWeights { point: usize },
    #[error("operation needs at least one fixed point")]
    EmptyData,
    #[error("weights {a} and {b} are not relatively prime")]
    NotCoprime { a: u64, b: u64 },
    #[error("point {0} is not present")]
    PointNotPresent(FixedPointDatum),
    #[error("points {0} and {1} are not a blow-down pair: {2}")]
    PairInvalid(Box<FixedPointDatum>, Box<FixedPointDatum>, &'static str),
    #[error("mirrored pair {{+,{a},{w}}} / {{-,{a},{w}}} is not present")]
    PairNotPresent { a: u64, w: u64 },
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("weight overflow computing {a} + {b}")]
    Overflow { a: u64, b: u64 },
    #[error("step {index} cannot be applied: {source}")]
    StepInapplicable {
        index: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("input is not valid effective 4-dimensional data: {0}")]
    ValidationFailed(ValidationReport),
    #[error("invalid multigraph: {0}")]
    InvalidGraph(String),
    #[error("trace cannot be turned into a multigraph: {0}")]
    TraceInvalid(String),
    #[error("graph satisfies every realizability property but the decider rejects {0}")]
    InternalInconsistency(String),
    #[error("entry {0} matches no small-k family")]
    UnmatchedEntry(String),
    #[error("classification covers 2, 3 or 4 points, got {0}")]
    UnsupportedPointCount(usize),
    #[error("polynomial division needs a divisor with unit leading coefficient")]
    NonUnitDivisor,
}
