//! Coproduct/counit structures on multi-matrix algebras.
//!
//! Two classical families are built from finite data: the function algebra
//! `C(Γ)` of a finite monoid and the group C*-algebra `C*(G)` of a finite
//! group presented through a complete set of unitary irreps. Any other
//! bialgebra can be supplied as an explicit coproduct matrix and validated.

mod groups;
mod linear_map;
mod structure;

pub use groups::{Irrep, IrrepTable, SemigroupTable};
pub use linear_map::LinearMap;
pub(crate) use structure::lambda_element;
pub use structure::{
    function_bialgebra, group_cstar_bialgebra, Bialgebra, DiscreteDecomposition, Mode, ValidationReport,
};

pub mod fixtures {
    //! Built-in groups with hard-coded unitary irreps.
    pub use super::groups::fixtures::*;
}
