//! Numerical laboratory for incompressible velocity fields and their
//! free-space pressure: synthesis of divergence-free fields, Poisson
//! solves in the full space and in the axisymmetric meridional plane,
//! geometric quadrature, and checkers for integral identities relating
//! pressure to velocity.

pub mod error;
pub mod grid;
pub mod spectral;

pub use error::{Error, Result};
pub use grid::{GridSpec, ScalarField, VectorField};
pub use spectral::{divergence, interpolate, laplacian, partial_derivative};
