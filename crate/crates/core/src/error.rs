use thiserror::Error;

use crate::parse::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("the K_n family is defined for n >= 2, got {0}")]
    FamilyRange(i64),
    #[error("degenerate diagram point: a + b = 0")]
    DegeneratePoint,
    #[error("edgepath ends part way along an edge; no integer state at one sheet")]
    FractionalEndpoint,
    #[error("cannot glue weights ({a1},{b1}) and ({a2},{b2})")]
    MismatchedWeights { a1: i64, b1: i64, a2: i64, b2: i64 },
    #[error("rotation-reflection is undefined for c = 0")]
    UndefinedCase,
    #[error("rotation-reflection gives a negative weight in case {case}")]
    Infeasible { case: u8 },
    #[error("slope-infinity edge count {t} is out of range for this case")]
    CasePreconditionViolated { t: i64 },
    #[error("slope normalization unavailable: {0}")]
    SeifertUndefined(String),
    #[error("unsupported expression shape: {0}")]
    UnsupportedShape(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
