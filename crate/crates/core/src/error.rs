use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("variable z{index} is out of range 1..={n}")]
    VariableOutOfRange { index: usize, n: usize },
    #[error("division is not allowed in polynomial input (position {position})")]
    DivisionInInput { position: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("point has a zero coordinate at position {0}")]
    ZeroCoordinate(usize),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("singular monodromy block in degree {0}")]
    SingularBlock(i64),
    #[error("substitution arguments {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    #[error("negative exponent on a non-invertible argument {0}")]
    NonInvertible(usize),
    #[error("link multiplicity m{component} = {m} is inconsistent with g (axis restriction {})", if *.restriction_vanishes { "vanishes" } else { "is nonzero" })]
    AxisMultiplicity { component: usize, m: i64, restriction_vanishes: bool },
    #[error("non-integer coefficient where an integer polynomial is required")]
    NonInteger,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
