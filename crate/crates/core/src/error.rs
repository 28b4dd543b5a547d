use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree d must be at least 1")]
    ZeroDegree,
    #[error("target dimension n must be at least 1")]
    ZeroDimension,
    #[error("side {side} is not a nonempty proper subset of 1..={d}")]
    BadSide { side: String, d: u8 },
    #[error("objects live over different d ({0} vs {1})")]
    MismatchedDegree(u8, u8),
    #[error("partitions {0} and {1} cross")]
    Crossing(String, String),
    #[error("partitions {0} and {1} admit no chain orientation")]
    NoOrientation(String, String),
    #[error("h_size {h} out of range for d = {d}")]
    OutOfRange { h: usize, d: u8 },
    #[error("subsets {0} and {1} are neither nested nor disjoint")]
    NotNested(String, String),
    #[error("cannot parse {0}")]
    Parse(String),
    #[error("unknown variable {0}")]
    UnknownVar(String),
    #[error("relation {label} is not homogeneous")]
    Inhomogeneous { label: String },
    #[error("F classes cannot be restricted to a boundary stratum")]
    FRestriction,
    #[error("stratum expression is not reduced")]
    Unreduced,
    #[error("slice for degree {0} has not been built")]
    MissingSlice(u32),
    #[error("top graded piece has dimension {0}, expected 1")]
    TopNotOneDimensional(usize),
    #[error("monomial {mono} has degree {found}, expected {expected}")]
    DegreeMismatch { mono: String, expected: u32, found: u32 },
    #[error("validation failed at {label}: {reason}")]
    Validation { label: String, reason: String },
    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
