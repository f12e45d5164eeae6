use std::fmt;

use thiserror::Error;

/// One violated cell of a candidate network matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum NetworkViolation {
    NonFinite { row: String, col: String, value: f64 },
    Asymmetric { row: String, col: String, value: f64, mirrored: f64 },
    /// `max{N(x,x), N(x',x')} > N(x,x')`.
    Diagonal { row: String, col: String, value: f64, diagonal: f64 },
}

impl fmt::Display for NetworkViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NetworkViolation::NonFinite { row, col, value } => {
                write!(f, "({row}, {col}): non-finite entry {value}")
            }
            NetworkViolation::Asymmetric { row, col, value, mirrored } => {
                write!(f, "({row}, {col}): {value} differs from mirrored entry {mirrored}")
            }
            NetworkViolation::Diagonal { row, col, value, diagonal } => write!(
                f,
                "({row}, {col}): coalescence time {value} is below observation time {diagonal}"
            ),
        }
    }
}

fn join_violations(v: &[NetworkViolation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid taxa set: {0}")]
    InvalidTaxa(String),
    #[error("{0} taxa requested but at most {max} are supported", max = crate::MAX_TAXA)]
    TooManyTaxa(usize),
    #[error("operands are defined over different taxa sets")]
    UniverseMismatch,
    #[error("empty face")]
    EmptyFace,
    #[error("unknown taxon {0:?}")]
    UnknownTaxon(String),
    #[error("invalid network: {}", join_violations(.0))]
    InvalidNetwork(Vec<NetworkViolation>),
    #[error("matrix is not square: {rows} rows, row {row} has {len} entries")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("not an ultranetwork: N({x},{z}) > max(N({x},{y}), N({y},{z}))")]
    NotUltranetwork { x: String, y: String, z: String },
    #[error("ultrametric expected, but taxon {0:?} has a nonzero diagonal entry")]
    NonzeroDiagonal(String),
    #[error("invalid gram: {0}")]
    InvalidGram(String),
    #[error("invalid face-set: {0}")]
    InvalidFaceSet(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("invalid surjection: {0}")]
    NotSurjective(String),
    #[error("{0}: empty input")]
    EmptyInput(&'static str),
    #[error("size guard exceeded: {0}")]
    TooLarge(String),
    #[error("{0}")]
    Format(#[from] crate::io::FormatError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
