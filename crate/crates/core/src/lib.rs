//! Exact-arithmetic engine for finite-dimensional Lie bialgebras.
//!
//! All arithmetic is over the Gaussian rationals, so every axiom, identity
//! and isomorphism check is an exact equality. The crate builds the
//! Drinfel'd double, double-bosonisations and the triple `T(g)` from
//! structure constants and verifies their properties.

pub mod braided;
pub mod catalog;
pub mod constructions;
pub mod error;
pub mod liealg;
pub mod linalg;
pub mod realforms;
pub mod report;
pub mod rmatrix;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
pub use liealg::{LieAlgebra, LieBialgebra, LieCobracket, LinearMap};
pub use report::{VerificationReport, Violation};
pub use rmatrix::{Classification, QuasitriangularBialgebra, TwistCocycle};
pub use scalar::Scalar;
pub use tensor::{Space, SpaceRef, Tensor2, Tensor3, Vector};
