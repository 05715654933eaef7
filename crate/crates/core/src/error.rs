use thiserror::Error;

use crate::quantity::Dimension;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: {left} vs {right}")]
    DimensionMismatch {
        context: String,
        left: Dimension,
        right: Dimension,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent overflow: {0} is outside [-12, 12]")]
    ExponentOverflow(i32),
    #[error("odd exponent on {0}: square root needs all exponents even")]
    OddExponent(Dimension),
    #[error("non-finite magnitude in {0}")]
    NonFinite(&'static str),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unknown unit `{symbol}` at byte {offset}")]
    UnknownUnit { symbol: String, offset: usize },
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{0} must be nonzero")]
    Zero(&'static str),
    #[error("negative {0}")]
    Negative(&'static str),
    #[error("speed {0} m/s is not below c")]
    SuperluminalInput(f64),
    #[error("negative radicand {value} at path sample {index}")]
    NegativeRadicand { index: usize, value: f64 },
    #[error("path weights sum to {0}, expected 1")]
    WeightSum(f64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("grazing angle: cos(theta) = {0} is not positive")]
    GrazingAngle(f64),
    #[error("unknown sample problem `{0}`")]
    UnknownProblem(String),
    #[error("class sum for grade {0} is zero")]
    ZeroClassSum(u8),
    #[error("center frame count {0} is odd; the expansion rule needs it even")]
    OddCenterCount(u64),
    #[error("scene volume {scene} does not exceed the body volumes {bodies}")]
    SceneTooSmall { scene: f64, bodies: f64 },
    #[error("body kind mismatch: {0}")]
    KindMismatch(String),

    #[error("ledger dir {next} does not follow {last}")]
    NonMonotonicDir { last: u64, next: u64 },
    #[error("ledger is empty")]
    EmptyLedger,
    #[error("format error at line {line}, column {column}: {message}")]
    Format {
        line: u64,
        column: usize,
        message: String,
    },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

impl Error {
    pub(crate) fn mismatch(context: impl Into<String>, left: Dimension, right: Dimension) -> Self {
        Error::DimensionMismatch {
            context: context.into(),
            left,
            right,
        }
    }
}
