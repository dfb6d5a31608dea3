//! Exact toolkit for rank-2 lattices `L ⊂ Z^N` paired with quivers with
//! superpotential.
//!
//! Given the lattice and the quiver, the crate validates their
//! compatibility, builds the bi-adjacency matrices `K_P(z,u)` and
//! `K_P^c(z,u)`, and computes from their determinants the Chow forms of torus
//! orbit closures in `P^{N-1}` and the principal A-determinant. All arithmetic
//! is exact.

pub mod biadjacency;
pub mod choworbit;
pub mod compat;
pub mod document;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod grassmann;
pub mod lattice;
pub mod quiver;
pub mod report;

pub use biadjacency::{BiAdjacency, Flavor};
pub use choworbit::{OrbitPoint, ProblemInstance};
pub use compat::{EpsilonAssignment, Infeasibility};
pub use document::ProblemDocument;
pub use error::{Error, Result};
pub use exact::{ExactInt, ExactRat, IntMatrix, Monomial, Poly, PolyMatrix, Quotient, VarId};
pub use grassmann::{GrassmannPoint, Line, PlueckerElement};
pub use lattice::{Lattice, SecondaryFan, Weight};
pub use quiver::{CellRef, Edge, Quiver};
pub use report::ValidationReport;
