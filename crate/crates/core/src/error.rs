use thiserror::Error;

use crate::biadjacency::HomogeneityViolation;
use crate::compat::{Condition2Violation, Infeasibility};
use crate::lattice::LatticeViolation;
use crate::quiver::QuiverViolation;
use crate::report::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid lattice: {0}")]
    InvalidLattice(ValidationReport<LatticeViolation>),
    #[error("quiver cell conditions fail: {0}")]
    Condition1(ValidationReport<QuiverViolation>),
    #[error("epsilon compatibility fails: {0}")]
    Condition2(ValidationReport<Condition2Violation>),
    #[error("no epsilon assignment exists: {0}")]
    Infeasible(Box<Infeasibility>),
    #[error("homogeneity check fails: {0}")]
    Homogeneity(ValidationReport<HomogeneityViolation>),
    #[error("degree identities fail: {0}")]
    DegreeMismatch(String),
    #[error("matrix is {rows}x{cols}, not square")]
    NonSquare { rows: usize, cols: usize },
    #[error("determinant of an empty matrix")]
    EmptyMatrix,
    #[error("matrix of size {0} exceeds the column-subset determinant limit")]
    MatrixTooLarge(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the zero polynomial has no content")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("chamber point ({0}, {1}) lies on a ray of the secondary fan")]
    PointOnRay(String, String),
    #[error("vector is not in the kernel of the lattice matrix")]
    NotInKernel,
    #[error("group parameter t must be nonzero")]
    ZeroParameter,
    #[error("vectors are linearly dependent; no line through them")]
    DependentVectors,
    #[error("line matrix has rank < 2")]
    RankDeficientLine,
    #[error("orbit point must have all coordinates nonzero (coordinate {0} is zero)")]
    ZeroCoordinate(usize),
    #[error("determinant vanishes at the supplied point")]
    DegeneratePoint,
    #[error("line image is identically zero")]
    DegenerateLine,
    #[error("Z^N/L has torsion of order {0}; the principal A-determinant formula requires a torsion-free quotient")]
    TorsionPresent(String),
    #[error("unknown edge variable z{0}")]
    UnknownEdge(u32),
    #[error("unknown cell {0}")]
    UnknownCell(String),
    #[error("cell {cell} is not a single oriented cycle: {reason}")]
    NotACycle { cell: String, reason: String },
    #[error("malformed quiver: {0}")]
    MalformedQuiver(String),
    #[error("inconsistent a0 classes across chambers")]
    InconsistentA0,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
