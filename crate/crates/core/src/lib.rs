//! Exact computations for compatible Leibniz algebras given by structure
//! constants over the rationals.

pub mod algebra;
pub mod catalog;
pub mod cochain;
pub mod deformation;
pub mod error;
pub mod extension;
pub mod graded;
pub mod io;
pub mod linalg;
pub mod representation;
pub mod scalar;

pub use algebra::{BasisChange, BracketTensor, Check, CompatiblePair, Vector};
pub use error::{Error, Result};
pub use scalar::Scalar;
