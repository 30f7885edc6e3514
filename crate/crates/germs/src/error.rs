//! One error type shared by graph construction and everything downstream.

use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    EmptyGraph,
    DuplicateVertex(String),
    UnknownVertex(String),
    SelfLoop(String),
    DuplicateEdge(String, String),
    Disconnected,
    /// Weight 0, or weight 1 anywhere except on a lone vertex.
    InvalidWeight { vertex: String, weight: u32 },
    DimensionMismatch { expected: usize, got: usize },
    SingularMatrix,
    NotNegativeDefinite,
    /// Exceptional-family row outside 1..=15.
    UnknownRow(u8),
    /// Center weight for which the family's graph is not a negative-definite
    /// log-terminal germ (in particular any m < 2).
    InvalidM { row: u8, m: u32 },
    /// A curve list that is required to have positive coefficients does not.
    NonPositiveCoefficient,
    /// The auxiliary divisor has no curve meeting the exceptional set.
    EmptyDy,
    /// No vertex satisfies z_j > a_j, so no finite bound constrains mu.
    MuUnbounded,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyGraph => write!(f, "graph has no vertices"),
            Error::DuplicateVertex(id) => write!(f, "duplicate vertex id {id:?}"),
            Error::UnknownVertex(id) => write!(f, "unknown vertex id {id:?}"),
            Error::SelfLoop(id) => write!(f, "self-loop at vertex {id:?}"),
            Error::DuplicateEdge(a, b) => write!(f, "duplicate edge {a:?} -- {b:?}"),
            Error::Disconnected => write!(f, "graph is not connected"),
            Error::InvalidWeight { vertex, weight } => write!(
                f,
                "vertex {vertex:?} has weight {weight}; weights must be at least 2 \
                 (a lone weight-1 vertex models a smooth point)"
            ),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "expected {expected} entries, got {got}")
            }
            Error::SingularMatrix => write!(f, "matrix is singular"),
            Error::NotNegativeDefinite => {
                write!(f, "intersection matrix is not negative definite")
            }
            Error::UnknownRow(row) => {
                write!(f, "no exceptional family in row {row} (rows are 1..=15)")
            }
            Error::InvalidM { row, m } => write!(
                f,
                "row {row} with center weight {m} does not give a negative-definite \
                 log-terminal germ"
            ),
            Error::NonPositiveCoefficient => {
                write!(f, "curve coefficients must be positive here")
            }
            Error::EmptyDy => write!(f, "no curve of the divisor meets the exceptional set"),
            Error::MuUnbounded => {
                write!(f, "mu is unbounded: no vertex satisfies z > a")
            }
        }
    }
}

impl core::error::Error for Error {}
