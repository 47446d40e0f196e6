//! Exact-arithmetic toolkit for finite-dimensional cyclotomic Hecke algebras
//! over truncated polynomial rings Z = k[t]/(t^N): Hensel factorization,
//! truncated Laurent-series calculus, quiver Hecke (KLR) generators built
//! from generalized-eigenspace idempotents, the explicit translation between
//! Heisenberg and Kac-Moody generator families, and the generalized
//! cyclotomic quotient bookkeeping that ties them together.
//!
//! Everything is computed exactly over Q or F_p; the verification suites in
//! [`suites`] machine-check the defining identities (dimension formulas, KLR
//! relations, round trips, bubble factorizations) with zero tolerance.

pub mod bkiso;
pub mod error;
pub mod gcq;
pub mod hecke;
pub mod linalg;
pub mod localpoly;
pub mod report;
pub mod scalars;
pub mod series;
pub mod spectral;
pub mod suites;
pub mod weights;

pub use error::{AlgebraError, Result};
pub use hecke::{HeckeAlgebra, HeckeElem, Permutation};
pub use localpoly::{MonicPoly, Poly};
pub use report::{InstanceReport, SuiteReport};
pub use scalars::{BaseField, FieldElem, LocalRing, LocalScalar, QuantumParam, SqrtConvention};
pub use series::LaurentSeries;
pub use weights::{OrbitRegistry, SignTable, Vertex, Weight};
