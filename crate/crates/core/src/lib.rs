//! Exact-arithmetic toolkit for admissible Lie algebras.
//!
//! The crate builds Lie algebras from structure constants or from a reductive
//! algebra acting on a symplectic module, computes derivation algebras,
//! classifies derivations that induce 3-gradings, and decides membership in
//! the invariant cones `W_f` through nonnegativity of quadratic polynomials.
//!
//! All arithmetic is over exact rationals.

pub mod catalog;
pub mod cones;
pub mod derivations;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod spindler;

pub use cones::{ConeQuery, JacobiElement, QuadPolynomial, SpanCertificate, SpanVerdict};
pub use derivations::{BetaCompatiblePair, ClassifiedDerivation, ConditionCheck, Derivation, Grading3};
pub use error::{Error, Result};
pub use lie::{Element, LieAlgebra, Metadata, Validation};
pub use linalg::{int, parse_rat, rat, Mat, PsdStatus, Rat};
pub use spindler::{CompositeBasis, SpindlerAlgebra, SpindlerData, SymplecticForm};
