//! Exact computations with matrix factorizations of Landau-Ginzburg models.

pub mod cech;
pub mod complex;
pub mod curved;
pub mod error;
pub mod exterior;
pub mod groebner;
pub mod hochschild;
pub mod homcx;
pub mod matrix;
pub mod poly;
pub mod stabilization;

pub use curved::{external_tensor, CurvedMap, MatrixFactorization, Parity};
pub use error::{Error, Result};
pub use groebner::{Budget, GroebnerBasis, ModulePresentation, QDim};
pub use matrix::FreeModuleMap;
pub use poly::{MonomialOrder, Polynomial, Rational, Ring};
