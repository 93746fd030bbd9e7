//! Exact computations with generalized projective geometries: flag
//! geometries and their charts, intrinsic subspaces, Lagrangian
//! subgeometries, rectangular and symmetric Jordan pairs, and graded
//! general linear Lie algebras.

pub mod charts;
pub mod error;
pub mod exactla;
pub mod flags;
pub mod intrinsic;
pub mod jordan;
pub mod lagrangian;
pub mod liealg;

pub use error::{GeomError, Result};
