use thiserror::Error;

/// Errors raised by the monoid computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: u32, degree: usize },
    #[error("a transformation needs degree at least 1")]
    EmptyTransformation,
    #[error("no generators given")]
    EmptyGenerators,
    #[error("transformation is not an element of the monoid")]
    NotAnElement,
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("map is ill-defined: points {first} and {second} collide in the source but not in the target")]
    IllDefined { first: u32, second: u32 },
    #[error("images differ, no right Green pair exists")]
    ImageMismatch,
    #[error("element {element} does not stabilize H-class {h_class}")]
    NotAStabilizer { element: usize, h_class: usize },
    #[error("permutation is not in the Schützenberger group")]
    NotInGroup,
    #[error("J-class {0} is not regular")]
    NotRegular(usize),
    #[error("regular J-class {0} has no Schützenberger data")]
    NotRegularJClassData(usize),
    #[error("monoid of order {order} exceeds the oracle bound {bound}")]
    TooLarge { order: usize, bound: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("Cartan entry ({row}, {col}) is not a rational integer: {value}")]
    NonIntegralResult { row: usize, col: usize, value: String },
    #[error("Cartan entry ({row}, {col}) is negative: {value}")]
    NegativeEntry { row: usize, col: usize, value: i64 },
    #[error("simple dimension {index} is not a positive integer: {value}")]
    NonIntegralDimension { index: usize, value: String },
    #[error("character table computation failed: {0}")]
    CharacterTable(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
