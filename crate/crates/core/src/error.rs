use thiserror::Error;

use crate::dsl::ParseError;
use crate::ordinal::Ordinal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("malformed Cantor normal form: {0}")]
    MalformedCnf(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("family has no entries")]
    EmptyFamily,
    #[error("entry {entry}: chain types must be nonzero ordinals")]
    ZeroOrdinal { entry: usize },
    #[error("entry {entry}: progression base {gamma} is not a limit ordinal or zero")]
    NotLimitPart { entry: usize, gamma: Ordinal },
    #[error("entry {entry}: counts must be at least 1")]
    InvalidCount { entry: usize },
    #[error("entry {entry}: progression step must be at least 1")]
    InvalidStep { entry: usize },
    #[error("family mixes infinite well orders with infinite reversed well orders")]
    OrientationMixed,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NatError {
    #[error("natural-number sequences must have values >= 1")]
    ZeroValue,
    #[error("progression step must be at least 1")]
    InvalidStep,
    #[error("counts must be at least 1")]
    InvalidCount,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("{0} is not a limit ordinal")]
    NotLimit(Ordinal),
    #[error("{alpha} exceeds {gamma}")]
    AlphaTooBig { alpha: Ordinal, gamma: Ordinal },
    #[error("number of colors must be at least 1")]
    NoColors,
    #[error("{x} is not below {gamma}")]
    OutOfRange { x: Ordinal, gamma: Ordinal },
    #[error("color {color} is out of range")]
    BadColor { color: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("verdict is reversible; no witness exists")]
    NotNonReversible,
    #[error("verdict payload does not determine a witness: {0}")]
    MissingPayload(&'static str),
}

/// Crate-level error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Nat(#[from] NatError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
