//! Convolution semigroups of states on finite-dimensional C*-bialgebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`fdcstar`]: multi-matrix algebras, functionals, tensor products, GNS;
//! * [`bialgebra`]: coproducts and counits, `C(Γ)` and `C*(G)`;
//! * [`convolution`]: the convolution algebra, `L_μ`/`R_μ`, `exp_⋆`;
//! * [`semigroup`]: associated semigroups `P_t = R_{λ_t}` and their
//!   characterisations;
//! * [`groupfun`]: positive-definite and conditionally positive-definite
//!   functions on finite groups, Guichardet decomposition, compound Poisson
//!   measures;
//! * [`io`]: JSON schemas for all file formats.

pub mod bialgebra;
pub mod convolution;
pub mod error;
pub mod fdcstar;
pub mod groupfun;
pub mod io;
pub mod linalg;
pub mod sampling;
pub mod semigroup;

pub use bialgebra::{
    function_bialgebra, group_cstar_bialgebra, Bialgebra, IrrepTable, LinearMap, Mode, SemigroupTable,
};
pub use error::{Error, Result};
pub use fdcstar::{Algebra, Element, Functional, DEFAULT_TOL};
