//! Finite-dimensional C*-algebras `M_{n_1} ⊕ … ⊕ M_{n_k}`.
//!
//! The canonical basis is the list of matrix units `E^{(i)}_{rs}`, blocks in
//! declared order and row-major inside each block. Every coordinate vector
//! and every [`LinearMap`](crate::bialgebra::LinearMap) matrix in this crate
//! is expressed in that basis.

mod algebra;
mod functional;
mod gns;
mod tensor;

pub use algebra::{Algebra, BasisIndex, Element};
pub use functional::Functional;
pub use gns::{gns, GnsData};
pub use tensor::{tensor_algebra, tensor_element, tensor_functional, PairIndex};

/// Default absolute tolerance for numerical predicates.
pub const DEFAULT_TOL: f64 = 1e-9;
